#include <filesystem>
#include <fstream>

#include "diabpred/config.hpp"
#include "diabpred/error.hpp"
#include "diabpred/experiment.hpp"
#include "doctest.h"

using namespace diabpred;

namespace {

std::string message_of(ExperimentConfig& c, const std::string& text) {
  try {
    apply_config_text(c, text);
    validate(c);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    return e.what();
  }
  FAIL("expected a config error");
  return {};
}

}  // namespace

TEST_CASE("empty config keeps every default") {
  ExperimentConfig c;
  apply_config_text(c, "");
  apply_config_text(c, "# only a comment\n\n");
  validate(c);
  CHECK(c.seed == 42);
  CHECK(c.test_fraction == 0.2);
  CHECK(c.smote.k_neighbors == 5);
  CHECK(c.smote.target_ratio == 1.0);
  CHECK(c.health_features ==
        std::vector<std::string>{"HighBP", "HighChol", "CholCheck", "Smoker", "HvyAlcoholConsump", "BMI"});
  CHECK(c.logreg.C == 1.0);
  CHECK(c.cv_folds == 5);
  CHECK(c.features.rfe_n_select == 10);
  CHECK(c.features.lasso_lambda == 0.01);
  CHECK_FALSE(c.split_first);
}

TEST_CASE("values are applied and seed propagates") {
  ExperimentConfig c;
  apply_config_text(c,
                    "seed = 7\n"
                    "test_fraction = 0.25  # trailing comment\n"
                    "health_features = BMI, Age\n"
                    "logreg.optimizer = variantB\n"
                    "tree.max_depth = none\n"
                    "grid.logistic.C = 0.5, 2\n"
                    "split_first = true\n");
  validate(c);
  CHECK(c.seed == 7);
  CHECK(c.smote.seed == 7);
  CHECK(c.logreg.seed == 7);
  CHECK(c.test_fraction == 0.25);
  CHECK(c.health_features == std::vector<std::string>{"BMI", "Age"});
  CHECK(c.logreg.optimizer == Optimizer::Coordinate);
  CHECK_FALSE(c.tree.max_depth.has_value());
  CHECK(c.split_first);
  bool found = false;
  for (const auto& [k, v] : c.logistic_grid) {
    if (k == "C") {
      CHECK(v == std::vector<std::string>{"0.5", "2"});
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("strict parsing names the offending key") {
  ExperimentConfig c;
  CHECK(message_of(c, "smotee = 3\n").find("smotee") != std::string::npos);
  ExperimentConfig d;
  CHECK(message_of(d, "seed = abc\n").find("seed") != std::string::npos);
  ExperimentConfig e;
  CHECK(message_of(e, "test_fraction = 1.5\n").find("test_fraction") != std::string::npos);
  ExperimentConfig f;
  CHECK(message_of(f, "health_features = BMI, Weight\n").find("Weight") != std::string::npos);
  ExperimentConfig g;
  CHECK(message_of(g, "just words\n").find("line 1") != std::string::npos);
  ExperimentConfig h;
  CHECK(message_of(h, "logreg.penalty = ridge\n").find("logreg.penalty") != std::string::npos);
  ExperimentConfig i;
  CHECK(message_of(i, "grid.tree.gamma = 1\n").find("gamma") != std::string::npos);
}

TEST_CASE("format_config round-trips") {
  ExperimentConfig c;
  apply_config_text(c, "seed = 9\nlogreg.C = 0.125\ntree.max_depth = 4\nforest.max_features = 3\n");
  const auto text = format_config(c);
  ExperimentConfig back;
  apply_config_text(back, text);
  CHECK(format_config(back) == text);
  CHECK(back.logreg.C == 0.125);
  CHECK(back.tree.max_depth == 4u);
}

TEST_CASE("config file loading") {
  const auto path = std::filesystem::temp_directory_path() / "diabpred_test.cfg";
  {
    std::ofstream out(path);
    out << "cv.folds = 3\n";
  }
  ExperimentConfig c;
  apply_config_file(c, path);
  CHECK(c.cv_folds == 3);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(apply_config_file(c, path), Error);
}

TEST_CASE("experiment names and exit codes") {
  CHECK(parse_experiment("income") == Experiment::Income);
  CHECK_THROWS_AS(parse_experiment("both"), Error);
  CHECK(exit_code_for(ErrorKind::NonNumericCell) == 2);
  CHECK(exit_code_for(ErrorKind::Io) == 2);
  CHECK(exit_code_for(ErrorKind::SingleClass) == 3);
  CHECK(exit_code_for(ErrorKind::Config) == 4);
  CHECK(reference_scores(Experiment::Health).baseline_auc == 0.7051436982236732);
  CHECK(reference_scores(Experiment::Income).tuned_auc == 0.633);
}
