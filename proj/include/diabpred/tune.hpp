#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "diabpred/logistic.hpp"
#include "diabpred/matrix.hpp"
#include "diabpred/tree.hpp"

namespace diabpred {

enum class ModelFamily { Logistic, Tree };

const char* to_string(ModelFamily f);

// Hyperparameter name -> candidate values, in grid order. Values are kept as
// text ("none", "0.01", "quasi_newton") and interpreted per family.
using GridSpec = std::vector<std::pair<std::string, std::vector<std::string>>>;
using ParamSet = std::vector<std::pair<std::string, std::string>>;

// C x optimizer: 5 x 2 = 10 combinations.
GridSpec default_logistic_grid();
// max_depth x min_samples_split x min_samples_leaf.
GridSpec default_tree_grid();

std::size_t combination_count(const GridSpec& grid);
// Cartesian product; the last key varies fastest.
std::vector<ParamSet> expand_grid(const GridSpec& grid);

LogRegParams apply_params(LogRegParams base, const ParamSet& set);
TreeParams apply_params(TreeParams base, const ParamSet& set);

struct CvConfig {
  std::size_t folds = 5;
  std::uint64_t seed = 42;
  std::string scoring = "roc_auc";
};

// Shuffled partition of 0..n-1 into k folds whose sizes differ by at most
// one (the first n % k folds get the extra row). Throws BadParams.
std::vector<std::vector<std::size_t>> k_fold_indices(std::size_t n, std::size_t k, std::uint64_t seed);

struct GridEntry {
  ParamSet params;
  std::vector<double> fold_scores;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

struct GridResult {
  ModelFamily family = ModelFamily::Logistic;
  std::vector<GridEntry> entries;
  std::size_t best_index = 0;
  std::size_t n_fits = 0;
  std::size_t fold_attempts = 1;  // >1 when folds were re-drawn

  const ParamSet& best_params() const { return entries.at(best_index).params; }
  double best_score() const { return entries.at(best_index).mean; }
};

// Exhaustive grid search scored by held-out fold ROC AUC. The best entry has
// the largest mean; ties go to the first in grid order.
GridResult grid_search(const Matrix& x, const LabelVector& y, ModelFamily family,
                       const GridSpec& grid, const CvConfig& cv,
                       const LogRegParams& logistic_base = {}, const TreeParams& tree_base = {},
                       unsigned threads = 0);

std::string format_grid_csv(const GridResult& result);

}  // namespace diabpred
