#include "diabpred/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "diabpred/dataset.hpp"
#include "diabpred/error.hpp"

namespace diabpred {

std::vector<std::string> default_health_features() {
  return {"HighBP", "HighChol", "CholCheck", "Smoker", "HvyAlcoholConsump", "BMI"};
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
  throw Error(ErrorKind::Config, "key '" + std::string(key) + "': expected " + expected + ", got '" +
                                     std::string(value) + "'");
}

double to_real(std::string_view key, std::string_view value) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v)) {
    bad_value(key, value, "a number");
  }
  return v;
}

std::uint64_t to_count(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, "a non-negative integer");
  return v;
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, "true or false");
}

std::optional<std::size_t> to_optional_count(std::string_view key, std::string_view value) {
  if (value == "none") return std::nullopt;
  return static_cast<std::size_t>(to_count(key, value));
}

std::vector<std::string> to_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto comma = value.find(',', start);
    if (comma == std::string_view::npos) comma = value.size();
    const auto item = trim(value.substr(start, comma - start));
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

void set_grid(GridSpec& grid, std::string_view key, std::string_view name,
              const std::vector<std::string>& allowed, std::string_view value) {
  if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
    throw Error(ErrorKind::Config, "unknown key '" + std::string(key) + "'");
  }
  auto values = to_list(value);
  if (values.empty()) bad_value(key, value, "a non-empty list");
  for (auto& [existing, list] : grid) {
    if (existing == name) {
      list = std::move(values);
      return;
    }
  }
  grid.emplace_back(std::string(name), std::move(values));
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out;
}

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void set_config_value(ExperimentConfig& c, std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  if (key == "data_path") c.data_path = std::string(value);
  else if (key == "output_dir") c.output_dir = std::string(value);
  else if (key == "seed") {
    c.seed = to_count(key, value);
    c.smote.seed = c.logreg.seed = c.tree.seed = c.seed;
  }
  else if (key == "test_fraction") c.test_fraction = to_real(key, value);
  else if (key == "split_first") c.split_first = to_bool(key, value);
  else if (key == "threads") c.threads = static_cast<unsigned>(to_count(key, value));
  else if (key == "smote.k_neighbors") c.smote.k_neighbors = to_count(key, value);
  else if (key == "smote.target_ratio") c.smote.target_ratio = to_real(key, value);
  else if (key == "health_features") c.health_features = to_list(value);
  else if (key == "logreg.penalty") {
    try { c.logreg.penalty = parse_penalty(std::string(value)); }
    catch (const Error&) { bad_value(key, value, "none, l1 or l2"); }
  }
  else if (key == "logreg.C") c.logreg.C = to_real(key, value);
  else if (key == "logreg.optimizer") {
    try { c.logreg.optimizer = parse_optimizer(std::string(value)); }
    catch (const Error&) { bad_value(key, value, "quasi_newton or coordinate"); }
  }
  else if (key == "logreg.max_iter") c.logreg.max_iter = to_count(key, value);
  else if (key == "logreg.tol") c.logreg.tol = to_real(key, value);
  else if (key == "logreg.standardize") c.logreg.standardize = to_bool(key, value);
  else if (key == "tree.max_depth") c.tree.max_depth = to_optional_count(key, value);
  else if (key == "tree.min_samples_split") c.tree.min_samples_split = to_count(key, value);
  else if (key == "tree.min_samples_leaf") c.tree.min_samples_leaf = to_count(key, value);
  else if (key == "cv.folds") c.cv_folds = to_count(key, value);
  else if (key == "features.lasso_lambda") c.features.lasso_lambda = to_real(key, value);
  else if (key == "features.rfe_n_select") c.features.rfe_n_select = to_count(key, value);
  else if (key == "features.rfe_step") c.features.rfe_step = to_count(key, value);
  else if (key == "forest.n_trees") c.features.forest_trees = to_count(key, value);
  else if (key == "forest.max_features") c.features.forest_max_features = to_optional_count(key, value);
  else if (key == "forest.max_depth") c.features.forest_max_depth = to_optional_count(key, value);
  else if (key.starts_with("grid.logistic.")) {
    set_grid(c.logistic_grid, key, key.substr(14), {"C", "optimizer", "penalty"}, value);
  } else if (key.starts_with("grid.tree.")) {
    set_grid(c.tree_grid, key, key.substr(10), {"max_depth", "min_samples_split", "min_samples_leaf"},
             value);
  } else {
    throw Error(ErrorKind::Config, "unknown key '" + std::string(key) + "'");
  }
}

void apply_config_text(ExperimentConfig& config, std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::Config, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    set_config_value(config, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(config, buffer.str());
}

void validate(const ExperimentConfig& c) {
  if (!(c.test_fraction > 0.0 && c.test_fraction < 1.0)) {
    throw Error(ErrorKind::Config, "key 'test_fraction': must lie in (0, 1)");
  }
  if (c.health_features.empty()) throw Error(ErrorKind::Config, "key 'health_features': empty list");
  for (const auto& name : c.health_features) {
    if (!find_column_spec(name) || name == kTargetColumn) {
      throw Error(ErrorKind::Config, "key 'health_features': unknown feature '" + name + "'");
    }
  }
  if (c.smote.k_neighbors < 1) throw Error(ErrorKind::Config, "key 'smote.k_neighbors': must be >= 1");
  if (!(c.smote.target_ratio > 0 && c.smote.target_ratio <= 1)) {
    throw Error(ErrorKind::Config, "key 'smote.target_ratio': must lie in (0, 1]");
  }
  if (c.cv_folds < 2) throw Error(ErrorKind::Config, "key 'cv.folds': must be >= 2");
  if (c.features.forest_trees < 1) throw Error(ErrorKind::Config, "key 'forest.n_trees': must be >= 1");
  if (!(c.features.lasso_lambda > 0)) throw Error(ErrorKind::Config, "key 'features.lasso_lambda': must be > 0");
  if (c.features.rfe_step < 1) throw Error(ErrorKind::Config, "key 'features.rfe_step': must be >= 1");
  if (c.features.rfe_n_select < 1 || c.features.rfe_n_select > 21) {
    throw Error(ErrorKind::Config, "key 'features.rfe_n_select': must lie in [1, 21]");
  }
  try {
    validate(c.logreg);
    validate(c.tree);
    for (const auto& set : expand_grid(c.logistic_grid)) apply_params(c.logreg, set);
    for (const auto& set : expand_grid(c.tree_grid)) apply_params(c.tree, set);
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, e.what());
  }
}

std::string format_config(const ExperimentConfig& c) {
  auto opt = [](const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string("none");
  };
  std::string out;
  auto put = [&](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
  put("data_path", c.data_path.string());
  put("output_dir", c.output_dir.string());
  put("seed", std::to_string(c.seed));
  put("test_fraction", real(c.test_fraction));
  put("split_first", c.split_first ? "true" : "false");
  put("threads", std::to_string(c.threads));
  put("smote.k_neighbors", std::to_string(c.smote.k_neighbors));
  put("smote.target_ratio", real(c.smote.target_ratio));
  put("health_features", join(c.health_features));
  put("logreg.penalty", to_string(c.logreg.penalty));
  put("logreg.C", real(c.logreg.C));
  put("logreg.optimizer", to_string(c.logreg.optimizer));
  put("logreg.max_iter", std::to_string(c.logreg.max_iter));
  put("logreg.tol", real(c.logreg.tol));
  put("logreg.standardize", c.logreg.standardize ? "true" : "false");
  put("tree.max_depth", opt(c.tree.max_depth));
  put("tree.min_samples_split", std::to_string(c.tree.min_samples_split));
  put("tree.min_samples_leaf", std::to_string(c.tree.min_samples_leaf));
  put("cv.folds", std::to_string(c.cv_folds));
  put("features.lasso_lambda", real(c.features.lasso_lambda));
  put("features.rfe_n_select", std::to_string(c.features.rfe_n_select));
  put("features.rfe_step", std::to_string(c.features.rfe_step));
  put("forest.n_trees", std::to_string(c.features.forest_trees));
  put("forest.max_features", opt(c.features.forest_max_features));
  put("forest.max_depth", opt(c.features.forest_max_depth));
  for (const auto& [name, values] : c.logistic_grid) put("grid.logistic." + name, join(values));
  for (const auto& [name, values] : c.tree_grid) put("grid.tree." + name, join(values));
  return out;
}

}  // namespace diabpred
