#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace diabpred {

struct ConfusionMatrix {
  std::size_t tn = 0, fp = 0, fn = 0, tp = 0;

  std::size_t total() const noexcept { return tn + fp + fn + tp; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Throws LengthMismatch / NonBinary.
ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
  // Set when the corresponding ratio had a zero denominator and was reported as 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;
};

struct ClassificationReport {
  std::array<ClassMetrics, 2> classes;  // index = class label
  double accuracy = 0.0;
  ClassMetrics macro;
  ClassMetrics weighted;
  ConfusionMatrix matrix;
};

ClassificationReport classification_report(std::span<const int> y_true, std::span<const int> y_pred);
ClassificationReport classification_report(const ConfusionMatrix& cm);

// Fixed-width text layout with two-decimal values.
std::string format_report(const ClassificationReport& report);

struct CurvePoint {
  double threshold;
  double x;  // fpr (ROC) or recall (PR)
  double y;  // tpr (ROC) or precision (PR)
};

struct RocCurve {
  std::vector<CurvePoint> points;  // (0,0) first, (1,1) last
  double auc = 0.0;
};

struct PrCurve {
  std::vector<CurvePoint> points;  // descending threshold, recall nondecreasing
  double average_precision = 0.0;
};

// Thresholds at each distinct score, descending; tied scores form one point.
// The leading (0,0) point carries threshold +inf. Throws SingleClass.
RocCurve roc_curve(std::span<const int> y_true, std::span<const double> scores);
PrCurve pr_curve(std::span<const int> y_true, std::span<const double> scores);

double roc_auc(std::span<const int> y_true, std::span<const double> scores);

}  // namespace diabpred
