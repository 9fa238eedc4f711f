#include "diabpred/tune.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "diabpred/error.hpp"
#include "diabpred/metrics.hpp"
#include "diabpred/parallel.hpp"
#include "diabpred/rng.hpp"

namespace diabpred {

const char* to_string(ModelFamily f) { return f == ModelFamily::Logistic ? "logistic" : "tree"; }

GridSpec default_logistic_grid() {
  return {{"C", {"0.01", "0.1", "1", "10", "100"}},
          {"optimizer", {"quasi_newton", "coordinate"}}};
}

GridSpec default_tree_grid() {
  return {{"max_depth", {"none", "3", "5", "10"}},
          {"min_samples_split", {"2", "10", "50"}},
          {"min_samples_leaf", {"1", "5", "20"}}};
}

std::size_t combination_count(const GridSpec& grid) {
  std::size_t n = grid.empty() ? 0 : 1;
  for (const auto& [_, values] : grid) n *= values.size();
  return n;
}

std::vector<ParamSet> expand_grid(const GridSpec& grid) {
  if (grid.empty()) throw Error(ErrorKind::BadParams, "grid has no parameters");
  for (const auto& [name, values] : grid) {
    if (values.empty()) throw Error(ErrorKind::BadParams, "grid entry '" + name + "' is empty");
  }
  std::vector<ParamSet> out;
  std::vector<std::size_t> digit(grid.size(), 0);
  while (true) {
    ParamSet set;
    for (std::size_t k = 0; k < grid.size(); ++k) set.emplace_back(grid[k].first, grid[k].second[digit[k]]);
    out.push_back(std::move(set));
    std::size_t k = grid.size();
    while (k > 0) {
      --k;
      if (++digit[k] < grid[k].second.size()) break;
      digit[k] = 0;
      if (k == 0) return out;
    }
  }
}

namespace {

double parse_real(const std::string& name, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::BadParams, "parameter '" + name + "' has non-numeric value '" + value + "'");
}

std::size_t parse_count(const std::string& name, const std::string& value) {
  const double v = parse_real(name, value);
  if (v < 0 || v != std::floor(v)) {
    throw Error(ErrorKind::BadParams, "parameter '" + name + "' needs a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

LogRegParams apply_params(LogRegParams base, const ParamSet& set) {
  for (const auto& [name, value] : set) {
    if (name == "C") base.C = parse_real(name, value);
    else if (name == "optimizer") base.optimizer = parse_optimizer(value);
    else if (name == "penalty") base.penalty = parse_penalty(value);
    else if (name == "max_iter") base.max_iter = parse_count(name, value);
    else if (name == "tol") base.tol = parse_real(name, value);
    else throw Error(ErrorKind::BadParams, "unknown logistic hyperparameter '" + name + "'");
  }
  validate(base);
  return base;
}

TreeParams apply_params(TreeParams base, const ParamSet& set) {
  for (const auto& [name, value] : set) {
    if (name == "max_depth") {
      base.max_depth = value == "none" ? std::nullopt : std::optional(parse_count(name, value));
    } else if (name == "min_samples_split") {
      base.min_samples_split = parse_count(name, value);
    } else if (name == "min_samples_leaf") {
      base.min_samples_leaf = parse_count(name, value);
    } else {
      throw Error(ErrorKind::BadParams, "unknown tree hyperparameter '" + name + "'");
    }
  }
  validate(base);
  return base;
}

std::vector<std::vector<std::size_t>> k_fold_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2 || k > n) throw Error(ErrorKind::BadParams, "folds must lie in [2, n]");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(perm.begin(), perm.end());
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                    perm.begin() + static_cast<std::ptrdiff_t>(pos + size));
    std::sort(folds[f].begin(), folds[f].end());
    pos += size;
  }
  return folds;
}

GridResult grid_search(const Matrix& x, const LabelVector& y, ModelFamily family,
                       const GridSpec& grid, const CvConfig& cv,
                       const LogRegParams& logistic_base, const TreeParams& tree_base,
                       unsigned threads) {
  if (x.rows() != y.size()) throw Error(ErrorKind::DimensionMismatch, "rows and labels differ");
  check_binary(y.values);
  if (!y.has_both_classes()) throw Error(ErrorKind::SingleClass, "grid search needs both classes");
  if (cv.scoring != "roc_auc") throw Error(ErrorKind::BadParams, "only roc_auc scoring is supported");
  const auto combos = expand_grid(grid);
  // validate every combination before spending time on fits
  for (const auto& set : combos) {
    if (family == ModelFamily::Logistic) apply_params(logistic_base, set);
    else apply_params(tree_base, set);
  }

  // Both the training part and the validation part of every fold must hold
  // both classes; otherwise the folds are re-drawn from a derived seed.
  constexpr std::size_t kMaxAttempts = 10;
  std::vector<std::vector<std::size_t>> folds;
  std::size_t attempt = 0;
  for (; attempt < kMaxAttempts; ++attempt) {
    folds = k_fold_indices(x.rows(), cv.folds, attempt == 0 ? cv.seed : derive_seed(cv.seed, attempt));
    bool ok = true;
    for (const auto& fold : folds) {
      std::size_t pos = 0;
      for (auto i : fold) pos += static_cast<std::size_t>(y.values[i]);
      const std::size_t train_pos = y.positive_count() - pos;
      const std::size_t train_n = y.size() - fold.size();
      ok = ok && pos > 0 && pos < fold.size() && train_pos > 0 && train_pos < train_n;
    }
    if (ok) break;
  }
  if (attempt == kMaxAttempts) {
    throw Error(ErrorKind::FoldDegenerate, "could not draw folds with both classes everywhere");
  }

  std::vector<std::vector<std::size_t>> train_idx(cv.folds);
  for (std::size_t f = 0; f < cv.folds; ++f) {
    std::vector<std::uint8_t> held(x.rows(), 0);
    for (auto i : folds[f]) held[i] = 1;
    for (std::size_t i = 0; i < x.rows(); ++i) {
      if (!held[i]) train_idx[f].push_back(i);
    }
  }

  GridResult result;
  result.family = family;
  result.fold_attempts = attempt + 1;
  result.entries.resize(combos.size());
  for (std::size_t c = 0; c < combos.size(); ++c) {
    result.entries[c].params = combos[c];
    result.entries[c].fold_scores.assign(cv.folds, 0.0);
  }

  parallel_for(
      combos.size() * cv.folds,
      [&](std::size_t task) {
        const std::size_t c = task / cv.folds;
        const std::size_t f = task % cv.folds;
        const Matrix x_train = x.select_rows(train_idx[f]);
        const LabelVector y_train = y.select(train_idx[f]);
        const Matrix x_val = x.select_rows(folds[f]);
        const LabelVector y_val = y.select(folds[f]);
        std::vector<double> scores;
        if (family == ModelFamily::Logistic) {
          const auto model = fit_logreg(x_train, y_train, apply_params(logistic_base, combos[c]));
          scores = predict_proba(model, x_val);
        } else {
          const auto model = fit_tree(x_train, y_train, apply_params(tree_base, combos[c]));
          scores = predict_tree(model, x_val).scores;
        }
        result.entries[c].fold_scores[f] = roc_auc(y_val.values, scores);
      },
      threads);
  result.n_fits = combos.size() * cv.folds;

  for (auto& e : result.entries) {
    const double k = static_cast<double>(e.fold_scores.size());
    e.mean = std::accumulate(e.fold_scores.begin(), e.fold_scores.end(), 0.0) / k;
    double ss = 0.0;
    for (double s : e.fold_scores) ss += (s - e.mean) * (s - e.mean);
    e.std = std::sqrt(ss / k);
  }
  for (std::size_t c = 1; c < result.entries.size(); ++c) {
    if (result.entries[c].mean > result.entries[result.best_index].mean) result.best_index = c;
  }
  return result;
}

std::string format_grid_csv(const GridResult& result) {
  std::string out;
  if (result.entries.empty()) return out;
  const auto& first = result.entries.front();
  for (const auto& [name, _] : first.params) out += name + ",";
  for (std::size_t f = 0; f < first.fold_scores.size(); ++f) out += "fold" + std::to_string(f) + ",";
  out += "mean,std\n";
  char buf[64];
  for (const auto& e : result.entries) {
    for (const auto& [_, value] : e.params) out += value + ",";
    for (double s : e.fold_scores) {
      std::snprintf(buf, sizeof buf, "%.17g,", s);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", e.mean, e.std);
    out += buf;
  }
  return out;
}

}  // namespace diabpred
