#include "diabpred/tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "diabpred/error.hpp"
#include "diabpred/parallel.hpp"
#include "diabpred/rng.hpp"

namespace diabpred {

void validate(const TreeParams& params) {
  if (params.min_samples_split < 2) throw Error(ErrorKind::BadParams, "min_samples_split must be >= 2");
  if (params.min_samples_leaf < 1) throw Error(ErrorKind::BadParams, "min_samples_leaf must be >= 1");
}

double gini_impurity(double negatives, double positives) {
  const double total = negatives + positives;
  if (!(total > 0)) throw Error(ErrorKind::EmptyNode, "Gini impurity of an empty node");
  const double f0 = negatives / total;
  const double f1 = positives / total;
  return 1.0 - (f0 * f0 + f1 * f1);
}

namespace {

using Order = std::vector<std::vector<std::uint32_t>>;

// Row orderings by feature value (ties by row index), computed once per
// dataset and filtered per tree.
Order presort(const Matrix& x) {
  Order order(x.cols());
  for (std::size_t f = 0; f < x.cols(); ++f) {
    auto& o = order[f];
    o.resize(x.rows());
    std::iota(o.begin(), o.end(), 0u);
    std::stable_sort(o.begin(), o.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return x(a, f) < x(b, f); });
  }
  return order;
}

struct Candidate {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double proxy = -1.0;
  std::size_t left_len = 0;  // rows (not weight) going left
  std::array<double, 2> left{0, 0};
};

class Builder {
 public:
  Builder(const Matrix& x, std::span<const int> y, std::vector<double> weight,
          const TreeParams& params, std::size_t max_features, std::uint64_t seed)
      : x_(x), y_(y), weight_(std::move(weight)), params_(params),
        max_features_(max_features), rng_(seed), goes_left_(x.rows(), 0) {}

  std::vector<TreeNode> build(const Order& global) {
    const std::size_t p = x_.cols();
    sorted_.resize(p);
    for (std::size_t f = 0; f < p; ++f) {
      sorted_[f].clear();
      for (auto r : global[f]) {
        if (weight_[r] > 0) sorted_[f].push_back(r);
      }
    }
    const std::size_t active = p ? sorted_[0].size() : 0;
    scratch_.resize(active);

    std::array<double, 2> counts{0, 0};
    if (p == 0) {
      for (std::size_t r = 0; r < x_.rows(); ++r) counts[y_[r]] += weight_[r];
    } else {
      for (auto r : sorted_[0]) counts[y_[r]] += weight_[r];
    }
    root_weight_ = counts[0] + counts[1];

    struct Task {
      std::size_t begin, end, depth;
      int parent;
      bool is_left;
      std::array<double, 2> counts;
    };
    std::vector<Task> stack{{0, active, 0, TreeNode::kNone, false, counts}};
    while (!stack.empty()) {
      const Task task = stack.back();
      stack.pop_back();
      const int id = static_cast<int>(nodes_.size());
      if (task.parent != TreeNode::kNone) {
        (task.is_left ? nodes_[task.parent].left : nodes_[task.parent].right) = id;
      }
      TreeNode node;
      node.class_counts = task.counts;
      node.n_samples = task.counts[0] + task.counts[1];
      node.impurity = node.n_samples > 0 ? gini_impurity(task.counts[0], task.counts[1]) : 0.0;
      nodes_.push_back(node);

      const bool stop = node.impurity <= 0.0 ||
                        (params_.max_depth && task.depth >= *params_.max_depth) ||
                        node.n_samples < static_cast<double>(params_.min_samples_split) ||
                        node.n_samples < 2.0 * static_cast<double>(params_.min_samples_leaf);
      if (stop) continue;
      const Candidate best = find_split(task.begin, task.end, task.counts);
      if (!best.found) continue;

      const std::array<double, 2> right{task.counts[0] - best.left[0],
                                        task.counts[1] - best.left[1]};
      const double wl = best.left[0] + best.left[1];
      const double wr = right[0] + right[1];
      const double imp_l = gini_impurity(best.left[0], best.left[1]);
      const double imp_r = gini_impurity(right[0], right[1]);
      auto& stored = nodes_[static_cast<std::size_t>(id)];
      stored.feature = static_cast<int>(best.feature);
      stored.threshold = best.threshold;
      stored.weighted_impurity_decrease =
          std::max(0.0, (node.n_samples / root_weight_) *
                            (node.impurity - (wl / node.n_samples) * imp_l -
                             (wr / node.n_samples) * imp_r));
      partition(task.begin, task.end, best);
      const std::size_t mid = task.begin + best.left_len;
      // right pushed first so the left subtree is emitted first (preorder)
      stack.push_back({mid, task.end, task.depth + 1, id, false, right});
      stack.push_back({task.begin, mid, task.depth + 1, id, true, best.left});
    }
    return std::move(nodes_);
  }

 private:
  Candidate find_split(std::size_t begin, std::size_t end, const std::array<double, 2>& counts) {
    const std::size_t p = x_.cols();
    const double min_leaf = static_cast<double>(params_.min_samples_leaf);
    const double total = counts[0] + counts[1];
    Candidate best;

    auto consider = [&](std::size_t f) {
      const auto& order = sorted_[f];
      if (x_(order[begin], f) == x_(order[end - 1], f)) return false;  // constant here
      std::array<double, 2> left{0, 0};
      for (std::size_t i = begin; i + 1 < end; ++i) {
        const auto r = order[i];
        left[y_[r]] += weight_[r];
        const double a = x_(r, f);
        const double b = x_(order[i + 1], f);
        if (!(a < b)) continue;
        const double wl = left[0] + left[1];
        const double wr = total - wl;
        if (wl < min_leaf) continue;
        if (wr < min_leaf) break;
        const double r0 = counts[0] - left[0];
        const double r1 = counts[1] - left[1];
        const double proxy = (left[0] * left[0] + left[1] * left[1]) / wl + (r0 * r0 + r1 * r1) / wr;
        double threshold = a + (b - a) / 2.0;
        if (!(threshold < b)) threshold = a;
        const double slack = 1e-12 * std::max(1.0, std::fabs(best.proxy));
        bool better = !best.found || proxy > best.proxy + slack;
        if (!better && std::fabs(proxy - best.proxy) <= slack) {
          better = f < best.feature || (f == best.feature && threshold < best.threshold);
        }
        if (better) {
          best.found = true;
          best.feature = f;
          best.threshold = threshold;
          best.proxy = proxy;
          best.left_len = i + 1 - begin;
          best.left = left;
        }
      }
      return true;
    };

    if (max_features_ >= p) {
      for (std::size_t f = 0; f < p; ++f) consider(f);
    } else {
      // Draw features without replacement until max_features non-constant
      // ones have been examined.
      features_.resize(p);
      std::iota(features_.begin(), features_.end(), std::size_t{0});
      std::size_t examined = 0;
      for (std::size_t k = 0; k < p && examined < max_features_; ++k) {
        const auto j = k + rng_.uniform_index(p - k);
        std::swap(features_[k], features_[j]);
        if (consider(features_[k])) ++examined;
      }
    }
    return best;
  }

  void partition(std::size_t begin, std::size_t end, const Candidate& split) {
    const auto& chosen = sorted_[split.feature];
    for (std::size_t i = begin; i < end; ++i) goes_left_[chosen[i]] = i < begin + split.left_len;
    for (auto& order : sorted_) {
      std::size_t l = begin;
      std::size_t k = 0;
      for (std::size_t i = begin; i < end; ++i) {
        const auto r = order[i];
        if (goes_left_[r]) {
          order[l++] = r;
        } else {
          scratch_[k++] = r;
        }
      }
      std::copy(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(k),
                order.begin() + static_cast<std::ptrdiff_t>(l));
    }
  }

  const Matrix& x_;
  std::span<const int> y_;
  std::vector<double> weight_;
  TreeParams params_;
  std::size_t max_features_;
  Rng rng_;
  Order sorted_;
  std::vector<std::uint8_t> goes_left_;
  std::vector<std::uint32_t> scratch_;
  std::vector<std::size_t> features_;
  std::vector<TreeNode> nodes_;
  double root_weight_ = 0.0;
};

void check_inputs(const Matrix& x, const LabelVector& y) {
  if (x.rows() != y.size()) {
    throw Error(ErrorKind::DimensionMismatch, "feature rows and labels differ in length");
  }
  check_binary(y.values);
  if (x.rows() == 0) throw Error(ErrorKind::EmptyData, "cannot fit a tree on zero rows");
  if (x.rows() > UINT32_MAX) throw Error(ErrorKind::BadParams, "too many rows");
}

std::vector<std::string> default_names(std::vector<std::string> names, std::size_t p) {
  if (names.empty()) {
    for (std::size_t f = 0; f < p; ++f) names.push_back("x" + std::to_string(f));
  }
  if (names.size() != p) throw Error(ErrorKind::FeatureMismatch, "feature name count mismatch");
  return names;
}

}  // namespace

std::size_t DecisionTreeModel::depth() const {
  std::size_t deepest = 0;
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  while (!stack.empty() && !nodes.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    const auto& n = nodes[static_cast<std::size_t>(id)];
    if (!n.is_leaf()) {
      stack.push_back({n.left, d + 1});
      stack.push_back({n.right, d + 1});
    }
  }
  return deepest;
}

std::size_t DecisionTreeModel::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t DecisionTreeModel::leaf_index(std::span<const double> row) const {
  std::size_t id = 0;
  while (!nodes[id].is_leaf()) {
    const auto& n = nodes[id];
    id = static_cast<std::size_t>(row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                          : n.right);
  }
  return id;
}

DecisionTreeModel fit_tree(const Matrix& x, const LabelVector& y, const TreeParams& params,
                           std::vector<std::string> feature_names) {
  validate(params);
  check_inputs(x, y);
  DecisionTreeModel model;
  model.params = params;
  model.n_features = x.cols();
  model.feature_names = default_names(std::move(feature_names), x.cols());
  Builder builder(x, y.values, std::vector<double>(x.rows(), 1.0), params, x.cols(), params.seed);
  model.nodes = builder.build(presort(x));
  return model;
}

TreePrediction predict_tree(const DecisionTreeModel& model, const Matrix& x) {
  if (x.cols() != model.n_features) {
    throw Error(ErrorKind::DimensionMismatch, "feature count does not match tree");
  }
  TreePrediction out;
  out.labels.values.resize(x.rows());
  out.scores.resize(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto& leaf = model.nodes[model.leaf_index(x.row(r))];
    out.labels.values[r] = leaf.predicted_class();
    out.scores[r] = leaf.positive_fraction();
  }
  return out;
}

ForestModel fit_forest(const Matrix& x, const LabelVector& y, const ForestParams& params,
                       std::vector<std::string> feature_names, unsigned threads) {
  validate(params.tree);
  check_inputs(x, y);
  if (params.n_trees < 1) throw Error(ErrorKind::BadParams, "n_trees must be >= 1");
  if (x.rows() < 2 || !y.has_both_classes()) {
    throw Error(ErrorKind::SingleClass, "forest needs both classes");
  }
  const std::size_t p = x.cols();
  std::size_t max_features =
      params.max_features.value_or(static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(p)))));
  if (max_features < 1 || max_features > p) {
    throw Error(ErrorKind::BadParams, "max_features must lie in [1, p]");
  }
  const auto names = default_names(std::move(feature_names), p);
  const Order order = presort(x);

  ForestModel forest;
  forest.params = params;
  forest.n_features = p;
  forest.trees.resize(params.n_trees);
  parallel_for(
      params.n_trees,
      [&](std::size_t t) {
        const auto tree_seed = derive_seed(params.seed, t);
        std::vector<double> weight(x.rows(), 1.0);
        if (params.bootstrap) {
          std::fill(weight.begin(), weight.end(), 0.0);
          Rng draw(tree_seed);
          for (std::size_t i = 0; i < x.rows(); ++i) weight[draw.uniform_index(x.rows())] += 1.0;
        }
        Builder builder(x, y.values, std::move(weight), params.tree, max_features,
                        derive_seed(tree_seed, 1));
        auto& tree = forest.trees[t];
        tree.params = params.tree;
        tree.n_features = p;
        tree.feature_names = names;
        tree.nodes = builder.build(order);
      },
      threads);
  return forest;
}

TreePrediction predict_forest(const ForestModel& forest, const Matrix& x) {
  TreePrediction out;
  out.scores.assign(x.rows(), 0.0);
  for (const auto& tree : forest.trees) {
    const auto pred = predict_tree(tree, x);
    for (std::size_t r = 0; r < x.rows(); ++r) out.scores[r] += pred.scores[r];
  }
  out.labels.values.resize(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    out.scores[r] /= static_cast<double>(forest.trees.size());
    out.labels.values[r] = out.scores[r] >= 0.5 ? 1 : 0;
  }
  return out;
}

ImportanceVector impurity_importance(const ForestModel& forest) {
  const std::size_t p = forest.n_features;
  ImportanceVector out;
  out.values.assign(p, 0.0);
  for (const auto& tree : forest.trees) {
    for (const auto& node : tree.nodes) {
      if (!node.is_leaf()) out.values[static_cast<std::size_t>(node.feature)] += node.weighted_impurity_decrease;
    }
  }
  double total = 0.0;
  for (auto& v : out.values) {
    v /= static_cast<double>(std::max<std::size_t>(forest.trees.size(), 1));
    total += v;
  }
  if (!(total > 0.0)) {
    out.degenerate = true;
    std::fill(out.values.begin(), out.values.end(), p ? 1.0 / static_cast<double>(p) : 0.0);
    return out;
  }
  for (auto& v : out.values) v /= total;
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// One node per line in preorder, indented two spaces per level:
//   split feature=<idx> threshold=<t> n=<w> impurity=<g> decrease=<d> counts=<n0>,<n1>
//   leaf n=<w> impurity=<g> counts=<n0>,<n1>
std::string serialize(const DecisionTreeModel& model) {
  std::string out = "format = diabpred-tree-1\n";
  out += "features = ";
  for (std::size_t i = 0; i < model.feature_names.size(); ++i) {
    if (i) out += ',';
    out += model.feature_names[i];
  }
  out += "\nmax_depth = " +
         (model.params.max_depth ? std::to_string(*model.params.max_depth) : std::string("none"));
  out += "\nmin_samples_split = " + std::to_string(model.params.min_samples_split);
  out += "\nmin_samples_leaf = " + std::to_string(model.params.min_samples_leaf);
  out += "\nseed = " + std::to_string(model.params.seed) + "\n";

  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  while (!stack.empty() && !model.nodes.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    const auto& n = model.nodes[static_cast<std::size_t>(id)];
    out.append(2 * depth, ' ');
    if (n.is_leaf()) {
      out += "leaf n=" + fmt(n.n_samples) + " impurity=" + fmt(n.impurity);
    } else {
      out += "split feature=" + std::to_string(n.feature) + " threshold=" + fmt(n.threshold) +
             " n=" + fmt(n.n_samples) + " impurity=" + fmt(n.impurity) +
             " decrease=" + fmt(n.weighted_impurity_decrease);
      stack.push_back({n.right, depth + 1});
      stack.push_back({n.left, depth + 1});
    }
    out += " counts=" + fmt(n.class_counts[0]) + "," + fmt(n.class_counts[1]) + "\n";
  }
  return out;
}

DecisionTreeModel deserialize_tree(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  DecisionTreeModel model;
  auto header = [&](const std::string& key) {
    if (!std::getline(in, line) || line.rfind(key + " = ", 0) != 0) {
      throw Error(ErrorKind::Format, "tree file lacks '" + key + "'");
    }
    return line.substr(key.size() + 3);
  };
  if (header("format") != "diabpred-tree-1") throw Error(ErrorKind::Format, "unknown tree format");
  {
    std::istringstream names(header("features"));
    std::string name;
    while (std::getline(names, name, ',')) model.feature_names.push_back(name);
    model.n_features = model.feature_names.size();
  }
  const auto depth = header("max_depth");
  if (depth != "none") model.params.max_depth = std::stoul(depth);
  model.params.min_samples_split = std::stoul(header("min_samples_split"));
  model.params.min_samples_leaf = std::stoul(header("min_samples_leaf"));
  model.params.seed = std::stoull(header("seed"));

  // (node id, number of children attached so far)
  std::vector<std::pair<int, int>> open;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string kind, field;
    fields >> kind;
    TreeNode node;
    while (fields >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::Format, "bad tree field '" + field + "'");
      const auto key = field.substr(0, eq);
      const auto value = field.substr(eq + 1);
      try {
        if (key == "feature") node.feature = std::stoi(value);
        else if (key == "threshold") node.threshold = std::stod(value);
        else if (key == "n") node.n_samples = std::stod(value);
        else if (key == "impurity") node.impurity = std::stod(value);
        else if (key == "decrease") node.weighted_impurity_decrease = std::stod(value);
        else if (key == "counts") {
          const auto comma = value.find(',');
          node.class_counts = {std::stod(value.substr(0, comma)), std::stod(value.substr(comma + 1))};
        } else {
          throw Error(ErrorKind::Format, "unknown tree field '" + key + "'");
        }
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::Format, "bad value in tree field '" + field + "'");
      }
    }
    const int id = static_cast<int>(model.nodes.size());
    if (!open.empty()) {
      auto& [parent, attached] = open.back();
      (attached == 0 ? model.nodes[static_cast<std::size_t>(parent)].left
                     : model.nodes[static_cast<std::size_t>(parent)].right) = id;
      if (++attached == 2) open.pop_back();
    } else if (id != 0) {
      throw Error(ErrorKind::Format, "tree file has nodes after a complete tree");
    }
    if (kind == "split") {
      if (node.feature < 0 || static_cast<std::size_t>(node.feature) >= model.n_features) {
        throw Error(ErrorKind::Format, "split feature out of range");
      }
      model.nodes.push_back(node);
      open.push_back({id, 0});
    } else if (kind == "leaf") {
      node.feature = TreeNode::kNone;
      model.nodes.push_back(node);
    } else {
      throw Error(ErrorKind::Format, "unknown node kind '" + kind + "'");
    }
  }
  if (!open.empty() || model.nodes.empty()) throw Error(ErrorKind::Format, "truncated tree file");
  return model;
}

}  // namespace diabpred
