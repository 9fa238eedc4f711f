#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diabpred/matrix.hpp"

namespace diabpred {

struct TreeParams {
  std::optional<std::size_t> max_depth;  // nullopt = unlimited
  std::size_t min_samples_split = 2;
  std::size_t min_samples_leaf = 1;
  std::uint64_t seed = 42;
};

void validate(const TreeParams& params);

// Nodes are stored in preorder. Sample counts are weighted (bootstrap draws
// count once per draw).
struct TreeNode {
  static constexpr int kNone = -1;

  int feature = kNone;
  double threshold = 0.0;  // x[feature] <= threshold goes left
  int left = kNone;
  int right = kNone;
  double impurity = 0.0;
  double n_samples = 0.0;
  double weighted_impurity_decrease = 0.0;
  std::array<double, 2> class_counts{0.0, 0.0};

  bool is_leaf() const noexcept { return left == kNone; }
  // Majority class; a tie predicts 1.
  int predicted_class() const noexcept { return class_counts[1] >= class_counts[0] ? 1 : 0; }
  double positive_fraction() const noexcept {
    return n_samples > 0 ? class_counts[1] / n_samples : 0.0;
  }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct DecisionTreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  TreeParams params;
  std::vector<std::string> feature_names;
  std::size_t n_features = 0;

  std::size_t depth() const;
  std::size_t leaf_count() const;
  std::size_t leaf_index(std::span<const double> row) const;

  friend bool operator==(const DecisionTreeModel& a, const DecisionTreeModel& b) {
    return a.nodes == b.nodes && a.n_features == b.n_features &&
           a.feature_names == b.feature_names;
  }
};

// Binary Gini impurity 1 - sum(f_k^2). Throws EmptyNode when both counts are 0.
double gini_impurity(double negatives, double positives);

// Greedy CART with Gini; candidate thresholds are midpoints between
// consecutive distinct values. Equal-gain splits go to the lowest feature
// index, then the lowest threshold.
DecisionTreeModel fit_tree(const Matrix& x, const LabelVector& y, const TreeParams& params,
                           std::vector<std::string> feature_names = {});

struct TreePrediction {
  LabelVector labels;
  std::vector<double> scores;  // leaf positive fraction
};

TreePrediction predict_tree(const DecisionTreeModel& model, const Matrix& x);

struct ForestParams {
  std::size_t n_trees = 100;
  std::optional<std::size_t> max_features;  // nullopt = ceil(sqrt(p))
  bool bootstrap = true;
  std::uint64_t seed = 42;
  TreeParams tree;
};

struct ForestModel {
  std::vector<DecisionTreeModel> trees;
  ForestParams params;
  std::size_t n_features = 0;
};

// Trees are independent: tree t draws from an RNG seeded by (seed, t), so the
// forest does not depend on the number of worker threads.
ForestModel fit_forest(const Matrix& x, const LabelVector& y, const ForestParams& params,
                       std::vector<std::string> feature_names = {}, unsigned threads = 0);

TreePrediction predict_forest(const ForestModel& forest, const Matrix& x);

struct ImportanceVector {
  std::vector<double> values;  // sums to 1
  bool degenerate = false;     // no split anywhere; values are uniform
};

ImportanceVector impurity_importance(const ForestModel& forest);

std::string serialize(const DecisionTreeModel& model);
DecisionTreeModel deserialize_tree(const std::string& text);

}  // namespace diabpred
