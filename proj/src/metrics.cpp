#include "diabpred/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>

#include "diabpred/error.hpp"
#include "diabpred/matrix.hpp"

namespace diabpred {

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorKind::LengthMismatch, "label vectors differ in length");
  }
  check_binary(y_true);
  check_binary(y_pred);
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] == 1) {
      (y_pred[i] == 1 ? cm.tp : cm.fn)++;
    } else {
      (y_pred[i] == 1 ? cm.fp : cm.tn)++;
    }
  }
  return cm;
}

namespace {

ClassMetrics class_metrics(std::size_t hit, std::size_t predicted, std::size_t actual) {
  ClassMetrics m;
  m.support = actual;
  if (predicted > 0) {
    m.precision = static_cast<double>(hit) / static_cast<double>(predicted);
  } else {
    m.precision_undefined = true;
  }
  if (actual > 0) {
    m.recall = static_cast<double>(hit) / static_cast<double>(actual);
  } else {
    m.recall_undefined = true;
  }
  if (m.precision + m.recall > 0) {
    m.f1 = 2 * m.precision * m.recall / (m.precision + m.recall);
  } else {
    m.f1_undefined = true;
  }
  return m;
}

}  // namespace

ClassificationReport classification_report(const ConfusionMatrix& cm) {
  ClassificationReport r;
  r.matrix = cm;
  r.classes[1] = class_metrics(cm.tp, cm.tp + cm.fp, cm.tp + cm.fn);
  r.classes[0] = class_metrics(cm.tn, cm.tn + cm.fn, cm.tn + cm.fp);
  const auto total = cm.total();
  r.accuracy = total ? static_cast<double>(cm.tp + cm.tn) / static_cast<double>(total) : 0.0;

  r.macro.support = r.weighted.support = total;
  const auto& a = r.classes[0];
  const auto& b = r.classes[1];
  r.macro.precision = (a.precision + b.precision) / 2;
  r.macro.recall = (a.recall + b.recall) / 2;
  r.macro.f1 = (a.f1 + b.f1) / 2;
  if (total) {
    const double wa = static_cast<double>(a.support) / static_cast<double>(total);
    const double wb = static_cast<double>(b.support) / static_cast<double>(total);
    r.weighted.precision = wa * a.precision + wb * b.precision;
    r.weighted.recall = wa * a.recall + wb * b.recall;
    r.weighted.f1 = wa * a.f1 + wb * b.f1;
  }
  return r;
}

ClassificationReport classification_report(std::span<const int> y_true, std::span<const int> y_pred) {
  return classification_report(confusion(y_true, y_pred));
}

std::string format_report(const ClassificationReport& r) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%12s %9s %9s %9s %9s\n\n", "", "precision", "recall", "f1-score",
                "support");
  out += buf;
  for (int c = 0; c < 2; ++c) {
    const auto& m = r.classes[static_cast<std::size_t>(c)];
    std::snprintf(buf, sizeof buf, "%12d %9.2f %9.2f %9.2f %9zu\n", c, m.precision, m.recall, m.f1,
                  m.support);
    out += buf;
  }
  out += "\n";
  std::snprintf(buf, sizeof buf, "%12s %9s %9s %9.2f %9zu\n", "accuracy", "", "", r.accuracy,
                r.matrix.total());
  out += buf;
  std::snprintf(buf, sizeof buf, "%12s %9.2f %9.2f %9.2f %9zu\n", "macro avg", r.macro.precision,
                r.macro.recall, r.macro.f1, r.macro.support);
  out += buf;
  std::snprintf(buf, sizeof buf, "%12s %9.2f %9.2f %9.2f %9zu\n", "weighted avg",
                r.weighted.precision, r.weighted.recall, r.weighted.f1, r.weighted.support);
  out += buf;
  return out;
}

namespace {

struct Ranked {
  std::vector<std::size_t> order;  // by descending score
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

Ranked rank(std::span<const int> y_true, std::span<const double> scores) {
  if (y_true.size() != scores.size()) {
    throw Error(ErrorKind::LengthMismatch, "labels and scores differ in length");
  }
  check_binary(y_true);
  Ranked r;
  r.positives = static_cast<std::size_t>(std::count(y_true.begin(), y_true.end(), 1));
  r.negatives = y_true.size() - r.positives;
  if (r.positives == 0 || r.negatives == 0) {
    throw Error(ErrorKind::SingleClass, "curve needs both classes");
  }
  r.order.resize(y_true.size());
  std::iota(r.order.begin(), r.order.end(), std::size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return r;
}

// Cumulative (threshold, fp, tp) after each group of tied scores.
template <typename Fn>
void for_each_threshold(const Ranked& r, std::span<const int> y_true,
                        std::span<const double> scores, Fn&& fn) {
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < r.order.size();) {
    const double s = scores[r.order[i]];
    while (i < r.order.size() && scores[r.order[i]] == s) {
      (y_true[r.order[i]] == 1 ? tp : fp)++;
      ++i;
    }
    fn(s, fp, tp);
  }
}

}  // namespace

RocCurve roc_curve(std::span<const int> y_true, std::span<const double> scores) {
  const auto r = rank(y_true, scores);
  const double pos = static_cast<double>(r.positives);
  const double neg = static_cast<double>(r.negatives);
  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  for_each_threshold(r, y_true, scores, [&](double s, std::size_t fp, std::size_t tp) {
    curve.points.push_back({s, static_cast<double>(fp) / neg, static_cast<double>(tp) / pos});
  });
  // With every row counted the last point is already (1,1); keep it exact.
  curve.points.back().x = 1.0;
  curve.points.back().y = 1.0;

  // Trapezoids on integer counts, scaled once at the end.
  double area = 0.0;
  std::size_t prev_fp = 0, prev_tp = 0;
  for_each_threshold(r, y_true, scores, [&](double, std::size_t fp, std::size_t tp) {
    area += static_cast<double>(fp - prev_fp) * static_cast<double>(tp + prev_tp);
    prev_fp = fp;
    prev_tp = tp;
  });
  curve.auc = area / (2.0 * pos * neg);
  return curve;
}

double roc_auc(std::span<const int> y_true, std::span<const double> scores) {
  return roc_curve(y_true, scores).auc;
}

PrCurve pr_curve(std::span<const int> y_true, std::span<const double> scores) {
  const auto r = rank(y_true, scores);
  const double pos = static_cast<double>(r.positives);
  PrCurve curve;
  double prev_recall = 0.0;
  for_each_threshold(r, y_true, scores, [&](double s, std::size_t fp, std::size_t tp) {
    const double recall = static_cast<double>(tp) / pos;
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    curve.points.push_back({s, recall, precision});
    curve.average_precision += (recall - prev_recall) * precision;
    prev_recall = recall;
  });
  return curve;
}

}  // namespace diabpred
