#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "diabpred/config.hpp"
#include "diabpred/error.hpp"
#include "json.hpp"

namespace diabpred {

using Json = nlohmann::ordered_json;

enum class Experiment { Health, Income };

const char* to_string(Experiment e);
Experiment parse_experiment(const std::string& s);

// Reference AUC values for each model; kept in run reports as
// comparison points, never as gates.
struct ReferenceScores {
  double baseline_auc;
  double tuned_auc;
};
ReferenceScores reference_scores(Experiment e);

struct RunOutcome {
  std::filesystem::path run_dir;
  Json report;
  std::vector<std::string> files;  // relative to run_dir, sorted
};

// Every command writes into its own directory under config.output_dir and
// finishes with report.json (deterministic) and manifest.json (adds the
// creation time). Files listed by a previous manifest in that directory are
// removed first so the manifest always matches the directory contents.
RunOutcome run_eda(const ExperimentConfig& config);
RunOutcome run_features(const ExperimentConfig& config);
RunOutcome run_train(const ExperimentConfig& config, Experiment experiment, bool tuned);
RunOutcome run_baseline(const ExperimentConfig& config);
RunOutcome run_tune_only(const ExperimentConfig& config, Experiment experiment);

// Human-readable rendering of a report.json written by any command.
std::string render_report(const Json& report);

// 2 data error, 3 training error, 4 config error.
int exit_code_for(ErrorKind kind);

}  // namespace diabpred
