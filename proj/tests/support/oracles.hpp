#pragma once

// Independent reference computations used by the unit and acceptance tests.
// They deliberately share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

// P(score_pos > score_neg) + 0.5 P(tie) over all positive/negative pairs.
inline double mann_whitney_auc(const std::vector<int>& y, const std::vector<double>& s) {
  double concordant = 0;
  double pairs = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 1) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] != 0) continue;
      pairs += 1;
      if (s[i] > s[j]) concordant += 1;
      else if (s[i] == s[j]) concordant += 0.5;
    }
  }
  return concordant / pairs;
}

inline double gini(double neg, double pos) {
  const double n = neg + pos;
  const double a = neg / n;
  const double b = pos / n;
  return 1.0 - a * a - b * b;
}

struct BestSplit {
  double threshold = 0;
  double child_impurity = std::numeric_limits<double>::infinity();  // weighted, per sample
  bool found = false;
};

// Try every midpoint on a single feature; keep the lowest threshold among
// equal-quality splits. min_leaf restricts child sizes.
inline BestSplit brute_force_split(const std::vector<double>& x, const std::vector<int>& y,
                                   std::size_t min_leaf = 1) {
  std::vector<double> values = x;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  BestSplit best;
  const double n = static_cast<double>(x.size());
  for (std::size_t v = 0; v + 1 < values.size(); ++v) {
    const double t = values[v] / 2 + values[v + 1] / 2;
    double ln = 0, lp = 0, rn = 0, rp = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double& slot = x[i] <= t ? (y[i] ? lp : ln) : (y[i] ? rp : rn);
      slot += 1;
    }
    if (ln + lp < min_leaf || rn + rp < min_leaf) continue;
    const double child = ((ln + lp) * gini(ln, lp) + (rn + rp) * gini(rn, rp)) / n;
    if (!best.found || child < best.child_impurity - 1e-12) {
      best = {t, child, true};
    }
  }
  return best;
}

// Sum-of-log-loss objective for the 1-feature model w*x + b in raw units.
inline double logistic_objective_1d(const std::vector<double>& x, const std::vector<int>& y,
                                    double w, double b, double l2_inv_c, double l1_inv_c) {
  double total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double m = (y[i] ? 1.0 : -1.0) * (w * x[i] + b);
    total += m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
  }
  return total + 0.5 * l2_inv_c * w * w + l1_inv_c * std::abs(w);
}

// Golden-section minimisation of a unimodal function on [lo, hi].
template <typename F>
double golden_min(F f, double lo, double hi, int iterations = 200) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2;
}

// Nested golden-section scan over (w, b); the objective is jointly convex so
// the profile min_b f(w, b) is unimodal in w.
inline double min_objective_2param(const std::vector<double>& x, const std::vector<int>& y,
                                   double l2_inv_c, double l1_inv_c, double range = 20) {
  auto profile = [&](double w) {
    const double b = golden_min([&](double bb) { return logistic_objective_1d(x, y, w, bb, l2_inv_c, l1_inv_c); },
                                -range, range);
    return logistic_objective_1d(x, y, w, b, l2_inv_c, l1_inv_c);
  };
  const double w = golden_min(profile, -range, range);
  return profile(w);
}

// Pearson correlation by the textbook two-pass formula.
inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace oracle
