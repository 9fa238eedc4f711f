#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diabpred/balance.hpp"
#include "diabpred/logistic.hpp"
#include "diabpred/tree.hpp"
#include "diabpred/tune.hpp"

namespace diabpred {

std::vector<std::string> default_health_features();

struct FeatureSelectionConfig {
  double lasso_lambda = 0.01;
  std::size_t rfe_n_select = 10;
  std::size_t rfe_step = 1;
  std::size_t forest_trees = 100;
  std::optional<std::size_t> forest_max_features;
  std::optional<std::size_t> forest_max_depth;
};

struct ExperimentConfig {
  std::filesystem::path data_path = "data/diabetes_012_health_indicators_BRFSS2015.csv";
  std::filesystem::path output_dir = "runs";
  std::uint64_t seed = 42;
  double test_fraction = 0.2;
  bool split_first = false;
  SmoteParams smote;
  std::vector<std::string> health_features = default_health_features();
  LogRegParams logreg;
  TreeParams tree;
  GridSpec logistic_grid = default_logistic_grid();
  GridSpec tree_grid = default_tree_grid();
  std::size_t cv_folds = 5;
  FeatureSelectionConfig features;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Sets one dotted key; throws Error(Config) naming the key on unknown keys or
// malformed values. `seed` also reseeds SMOTE and the model parameters.
void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);

// "key = value" lines; '#' starts a comment; blank lines ignored.
void apply_config_text(ExperimentConfig& config, std::string_view text);
void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path);

// Checks cross-field invariants (feature names exist, fraction in (0,1)).
void validate(const ExperimentConfig& config);

// Canonical key = value dump; parsing it back reproduces the config.
std::string format_config(const ExperimentConfig& config);

}  // namespace diabpred
