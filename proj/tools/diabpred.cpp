#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "diabpred/config.hpp"
#include "diabpred/error.hpp"
#include "diabpred/experiment.hpp"

namespace {

constexpr const char* kOutEnv = "DIABPRED_OUT";

struct Flags {
  std::string data;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string experiment = "health";
  bool tuned = false;
  bool split_first = false;
  std::string report_path;
};

// defaults < environment < config file < flags
diabpred::ExperimentConfig build_config(const Flags& flags) {
  diabpred::ExperimentConfig config;
  if (const char* env = std::getenv(kOutEnv); env && *env) config.output_dir = env;
  if (!flags.config.empty()) diabpred::apply_config_file(config, flags.config);
  if (!flags.data.empty()) config.data_path = flags.data;
  if (!flags.out.empty()) config.output_dir = flags.out;
  if (flags.seed) diabpred::set_config_value(config, "seed", std::to_string(*flags.seed));
  if (flags.split_first) config.split_first = true;
  diabpred::validate(config);
  return config;
}

void print_outcome(const diabpred::RunOutcome& outcome) {
  std::cout << "wrote " << outcome.files.size() << " files to " << outcome.run_dir.string() << "\n";
  if (outcome.report.contains("warnings")) {
    for (const auto& w : outcome.report["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diabetes risk prediction pipeline on the BRFSS health-indicators table"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--data", flags.data, "Path to the health-indicators CSV");
    sub->add_option("--config", flags.config, "key = value configuration file");
    sub->add_option("--out", flags.out, std::string("Output directory (default $") + kOutEnv + " or runs)");
    sub->add_option("--seed", flags.seed, "Master seed (overrides the config file)");
    sub->add_flag("--split-first", flags.split_first, "Split before SMOTE so the test set holds only original rows");
  };

  auto* eda = app.add_subcommand("eda", "Correlation heatmap and income histogram");
  auto* features = app.add_subcommand("features", "Lasso, random forest and RFE feature rankings");
  auto* train = app.add_subcommand("train", "Fit and evaluate the health or income model");
  auto* baseline = app.add_subcommand("baseline", "Health model without SMOTE");
  auto* tune_only = app.add_subcommand("tune-only", "Grid search only");
  auto* report = app.add_subcommand("report", "Render a report.json as text");
  for (auto* sub : {eda, features, train, baseline, tune_only}) add_common(sub);
  for (auto* sub : {train, tune_only}) {
    sub->add_option("--experiment", flags.experiment, "health or income")
        ->check(CLI::IsMember({"health", "income"}));
  }
  train->add_flag("--tuned", flags.tuned, "Run the grid search and refit the best parameters");
  report->add_option("path", flags.report_path, "report.json or a run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }

  try {
    if (report->parsed()) {
      std::filesystem::path path = flags.report_path;
      if (std::filesystem::is_directory(path)) path /= "report.json";
      std::ifstream in(path);
      if (!in) throw diabpred::Error(diabpred::ErrorKind::Io, "cannot open '" + path.string() + "'");
      diabpred::Json json;
      try {
        json = diabpred::Json::parse(in);
      } catch (const std::exception& e) {
        throw diabpred::Error(diabpred::ErrorKind::Format, path.string() + ": " + e.what());
      }
      std::cout << diabpred::render_report(json);
      return 0;
    }

    const auto config = build_config(flags);
    const auto experiment = diabpred::parse_experiment(flags.experiment);
    diabpred::RunOutcome outcome;
    if (eda->parsed()) outcome = diabpred::run_eda(config);
    else if (features->parsed()) outcome = diabpred::run_features(config);
    else if (train->parsed()) outcome = diabpred::run_train(config, experiment, flags.tuned);
    else if (baseline->parsed()) outcome = diabpred::run_baseline(config);
    else outcome = diabpred::run_tune_only(config, experiment);
    print_outcome(outcome);
    if (train->parsed() || baseline->parsed()) {
      std::ifstream text(outcome.run_dir / "report.txt");
      std::cout << text.rdbuf();
    }
    return 0;
  } catch (const diabpred::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return diabpred::exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
