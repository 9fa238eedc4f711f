#include "diabpred/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "diabpred/balance.hpp"
#include "diabpred/dataset.hpp"
#include "diabpred/featsel.hpp"
#include "diabpred/metrics.hpp"
#include "diabpred/svg.hpp"

namespace diabpred {

const char* to_string(Experiment e) { return e == Experiment::Health ? "health" : "income"; }

Experiment parse_experiment(const std::string& s) {
  if (s == "health") return Experiment::Health;
  if (s == "income") return Experiment::Income;
  throw Error(ErrorKind::Config, "unknown experiment '" + s + "' (expected health or income)");
}

ReferenceScores reference_scores(Experiment e) {
  if (e == Experiment::Health) return {0.7051436982236732, 0.7743};
  return {0.6010309892201988, 0.633};
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io:
    case ErrorKind::MissingColumn:
    case ErrorKind::NonNumericCell:
    case ErrorKind::OutOfRange:
    case ErrorKind::EmptyData:
    case ErrorKind::InsufficientRows:
    case ErrorKind::Format:
      return 2;
    case ErrorKind::Config:
      return 4;
    default:
      return 3;
  }
}

namespace {

constexpr double kDegenerateRecall = 0.2;
constexpr const char* kLeakageWarning =
    "SMOTE was applied to the full dataset before the train/test split, so synthetic test rows "
    "are interpolated from rows that also appear in training; held-out metrics are optimistic. "
    "Use --split-first for the leakage-free ordering.";

constexpr const char* kSplitFirstNote =
    "SMOTE leakage caveat: this run split first and balanced the training rows only, so the test "
    "set holds original rows; the default ordering (SMOTE on the full dataset) leaks and is optimistic.";

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class RunWriter {
 public:
  explicit RunWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    const auto manifest = dir_ / "manifest.json";
    if (std::filesystem::exists(manifest)) {
      std::ifstream in(manifest);
      try {
        const auto previous = Json::parse(in);
        for (const auto& name : previous.at("files")) {
          const auto file = dir_ / name.get<std::string>();
          if (file.parent_path() == dir_) std::filesystem::remove(file);
        }
      } catch (const std::exception&) {
        throw Error(ErrorKind::Io, "unreadable manifest in '" + dir_.string() + "'");
      }
    }
  }

  void write(const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + (dir_ / name).string() + "'");
    out << content;
    if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
  }

  RunOutcome finish(Json report) {
    files_.push_back("report.json");
    files_.push_back("manifest.json");
    std::sort(files_.begin(), files_.end());
    report["files"] = files_;
    const std::string body = report.dump(2) + "\n";
    write("report.json", body);

    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    Json manifest;
    manifest["created_at"] = stamp;
    manifest["files"] = files_;
    write("manifest.json", manifest.dump(2) + "\n");
    return {dir_, std::move(report), files_};
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

std::string run_name(const std::string& base, const ExperimentConfig& config, bool uses_smote) {
  return base + (config.split_first && uses_smote ? "-split-first" : "");
}

Json config_json(const ExperimentConfig& config) {
  Json out;
  std::istringstream lines(format_config(config));
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find(" = ");
    out[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return out;
}

Json metrics_json(const ClassMetrics& m) {
  Json j;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["support"] = m.support;
  if (m.precision_undefined || m.recall_undefined || m.f1_undefined) {
    j["undefined"] = {{"precision", m.precision_undefined},
                      {"recall", m.recall_undefined},
                      {"f1", m.f1_undefined}};
  }
  return j;
}

Json evaluation_json(const ClassificationReport& r, double auc) {
  Json j;
  j["classes"] = {{"0", metrics_json(r.classes[0])}, {"1", metrics_json(r.classes[1])}};
  j["accuracy"] = r.accuracy;
  j["macro_avg"] = metrics_json(r.macro);
  j["weighted_avg"] = metrics_json(r.weighted);
  j["confusion"] = {{"tn", r.matrix.tn}, {"fp", r.matrix.fp}, {"fn", r.matrix.fn}, {"tp", r.matrix.tp}};
  j["auc"] = auc;
  return j;
}

Json grid_json(const GridResult& g) {
  Json j;
  j["family"] = to_string(g.family);
  j["combinations"] = g.entries.size();
  j["folds"] = g.entries.empty() ? 0 : g.entries.front().fold_scores.size();
  j["n_fits"] = g.n_fits;
  j["fold_attempts"] = g.fold_attempts;
  Json best;
  for (const auto& [k, v] : g.best_params()) best[k] = v;
  j["best_params"] = best;
  j["best_mean_auc"] = g.best_score();
  j["best_std_auc"] = g.entries[g.best_index].std;
  return j;
}

struct Prepared {
  Matrix x_train, x_test;
  LabelVector y_train, y_test;
  Json dataset;
  std::vector<std::string> warnings;
};

struct LoadedLabels {
  DataTable features;
  LabelVector labels;
  std::size_t rows;
};

LoadedLabels load_labeled(const ExperimentConfig& config) {
  const auto table = load_csv(config.data_path);
  auto [features, labels] = binarize_target(table);
  return {std::move(features), std::move(labels), table.n_rows()};
}

Json class_counts(const LabelVector& y) {
  return {{"0", y.negative_count()}, {"1", y.positive_count()}};
}

// load -> binarize -> select -> (SMOTE -> split | split -> SMOTE(train)) or
// split only when balance is false.
Prepared prepare(const ExperimentConfig& config, const std::vector<std::string>& columns, bool balance) {
  auto loaded = load_labeled(config);
  const auto sub = select_columns(loaded.features, columns);
  Matrix x = sub.values();
  LabelVector y = loaded.labels;

  Prepared out;
  out.dataset["rows"] = loaded.rows;
  out.dataset["features"] = columns;
  out.dataset["class_counts"] = class_counts(y);
  auto smote = [&](const Matrix& xs, const LabelVector& ys) {
    auto res = smote_balance(xs, ys, config.smote);
    if (res.k_clamped) {
      out.warnings.push_back("SMOTE k_neighbors clamped to " + std::to_string(res.k_used) +
                             " (minority class too small)");
    }
    out.dataset["synthetic_rows"] = res.origins.size();
    return res;
  };

  if (balance && !config.split_first) {
    auto res = smote(x, y);
    x = std::move(res.features);
    y = std::move(res.labels);
    out.dataset["class_counts_balanced"] = class_counts(y);
    out.dataset["order"] = "smote-then-split";
    out.warnings.push_back(kLeakageWarning);
  }
  const auto split = train_test_split(x.rows(), config.test_fraction, config.seed);
  out.x_train = x.select_rows(split.train_indices);
  out.y_train = y.select(split.train_indices);
  out.x_test = x.select_rows(split.test_indices);
  out.y_test = y.select(split.test_indices);
  if (balance && config.split_first) {
    auto res = smote(out.x_train, out.y_train);
    out.x_train = std::move(res.features);
    out.y_train = std::move(res.labels);
    out.dataset["class_counts_balanced"] = class_counts(out.y_train);
    out.dataset["order"] = "split-then-smote";
    out.warnings.push_back(kSplitFirstNote);
  }
  if (!balance) out.dataset["order"] = "split-only";
  out.dataset["train_rows"] = out.y_train.size();
  out.dataset["test_rows"] = out.y_test.size();
  out.dataset["test_class_counts"] = class_counts(out.y_test);
  return out;
}

std::vector<std::string> experiment_columns(const ExperimentConfig& config, Experiment e) {
  if (e == Experiment::Health) return config.health_features;
  return {std::string(kIncomeColumn)};
}

std::string title_of(Experiment e) {
  return e == Experiment::Health ? "Health Indicators" : "Income";
}

struct Scored {
  LabelVector labels;
  std::vector<double> scores;
  std::string model_text;
};

Scored fit_and_score(Experiment e, const Prepared& data, const LogRegParams& logreg,
                     const TreeParams& tree, std::vector<std::string>& warnings) {
  Scored s;
  if (e == Experiment::Health) {
    const auto model = fit_logreg(data.x_train, data.y_train, logreg);
    if (!model.converged) {
      warnings.push_back("logistic regression stopped after " + std::to_string(model.n_iter) +
                         " iterations without converging (gradient norm " + real(model.grad_norm) + ")");
    }
    s.scores = predict_proba(model, data.x_test);
    s.labels = predict_label(model, data.x_test);
    s.model_text = serialize(model);
  } else {
    const auto model = fit_tree(data.x_train, data.y_train, tree, {std::string(kIncomeColumn)});
    const auto pred = predict_tree(model, data.x_test);
    s.scores = pred.scores;
    s.labels = pred.labels;
    s.model_text = serialize(model);
  }
  return s;
}

std::string curve_csv(const std::vector<CurvePoint>& points) {
  std::string out = "threshold,x,y\n";
  for (const auto& p : points) out += real(p.threshold) + "," + real(p.x) + "," + real(p.y) + "\n";
  return out;
}

std::string auc_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16g", v);
  return buf;
}

void write_curves(RunWriter& writer, const std::string& title, const LabelVector& y,
                  const Scored& scored, const ClassificationReport& report, double auc) {
  const auto roc = roc_curve(y.values, scored.scores);
  const auto pr = pr_curve(y.values, scored.scores);
  writer.write("roc.csv", curve_csv(roc.points));
  writer.write("pr.csv", curve_csv(pr.points));

  svg::LinePlot roc_plot{title + " ROC curve", "False positive rate", "True positive rate", {}, {}, true};
  for (const auto& p : roc.points) roc_plot.points.emplace_back(p.x, p.y);
  char buf[64];
  std::snprintf(buf, sizeof buf, "AUC = %.4f", auc);
  roc_plot.annotation = buf;
  writer.write("roc.svg", svg::line_plot(roc_plot));

  svg::LinePlot pr_plot{title + " precision-recall curve", "Recall", "Precision", {}, {}, false};
  for (const auto& p : pr.points) pr_plot.points.emplace_back(p.x, p.y);
  std::snprintf(buf, sizeof buf, "AP = %.4f", pr.average_precision);
  pr_plot.annotation = buf;
  writer.write("pr.svg", svg::line_plot(pr_plot));

  const auto& cm = report.matrix;
  writer.write("confusion.csv", "actual,predicted_0,predicted_1\n0," + std::to_string(cm.tn) + "," +
                                    std::to_string(cm.fp) + "\n1," + std::to_string(cm.fn) + "," +
                                    std::to_string(cm.tp) + "\n");
}

std::string model_block(const std::string& title, const ClassificationReport& r, double auc) {
  return title + " Model Report:\n" + format_report(r) + "\n" + title + " Model AUC Score: " +
         auc_text(auc) + "\n";
}

std::string warnings_block(const std::vector<std::string>& warnings) {
  if (warnings.empty()) return {};
  std::string out = "\nWarnings:\n";
  for (const auto& w : warnings) out += "  - " + w + "\n";
  return out;
}

GridSpec single_point_grid(Experiment e, const ExperimentConfig& config) {
  if (e == Experiment::Health) {
    return {{"C", {real(config.logreg.C)}}, {"optimizer", {to_string(config.logreg.optimizer)}}};
  }
  const auto& t = config.tree;
  return {{"max_depth", {t.max_depth ? std::to_string(*t.max_depth) : std::string("none")}},
          {"min_samples_split", {std::to_string(t.min_samples_split)}},
          {"min_samples_leaf", {std::to_string(t.min_samples_leaf)}}};
}

GridResult tune(Experiment e, const ExperimentConfig& config, const Prepared& data, const GridSpec& grid) {
  const CvConfig cv{config.cv_folds, config.seed, "roc_auc"};
  const auto family = e == Experiment::Health ? ModelFamily::Logistic : ModelFamily::Tree;
  return grid_search(data.x_train, data.y_train, family, grid, cv, config.logreg, config.tree,
                     config.threads);
}

Json base_report(const std::string& command, const ExperimentConfig& config) {
  Json report;
  report["command"] = command;
  report["config"] = config_json(config);
  return report;
}

}  // namespace

RunOutcome run_eda(const ExperimentConfig& config) {
  const auto table = load_csv(config.data_path);
  RunWriter writer(config.output_dir / "eda");

  const auto corr = pearson_correlation(table);
  std::string csv;
  for (const auto& name : corr.labels) csv += "," + name;
  csv += "\n";
  const std::size_t p = corr.labels.size();
  for (std::size_t i = 0; i < p; ++i) {
    csv += corr.labels[i];
    for (std::size_t j = 0; j < p; ++j) csv += "," + (corr.undefined(i, j) ? std::string("NA") : real(corr.values(i, j)));
    csv += "\n";
  }
  writer.write("correlation.csv", csv);
  writer.write("correlation.svg",
               svg::heatmap("Correlation heatmap", corr.labels, corr.values, corr.undefined_mask));

  const auto hist = income_histogram(table);
  std::string hist_csv = "income,count\n";
  std::vector<std::string> labels;
  std::vector<double> counts;
  for (std::size_t i = 0; i < hist.categories.size(); ++i) {
    hist_csv += std::to_string(hist.categories[i]) + "," + std::to_string(hist.counts[i]) + "\n";
    labels.push_back(std::to_string(hist.categories[i]));
    counts.push_back(static_cast<double>(hist.counts[i]));
  }
  writer.write("income_hist.csv", hist_csv);
  writer.write("income_hist.svg", svg::bar_chart("Income distribution", labels, counts));

  auto report = base_report("eda", config);
  report["dataset"] = {{"rows", table.n_rows()}, {"columns", table.n_cols()}};
  auto pair = [&](const char* a, const char* b) {
    const auto i = *table.column_index(a);
    const auto j = *table.column_index(b);
    return corr.undefined(i, j) ? Json(nullptr) : Json(corr.values(i, j));
  };
  report["correlation"] = {{"GenHlth~PhysHlth", pair("GenHlth", "PhysHlth")},
                           {"GenHlth~Income", pair("GenHlth", "Income")}};
  const auto mode = std::max_element(hist.counts.begin(), hist.counts.end()) - hist.counts.begin();
  report["income_histogram"] = {{"counts", hist.counts}, {"mode", hist.categories[static_cast<std::size_t>(mode)]}};
  report["warnings"] = Json::array();
  return writer.finish(std::move(report));
}

RunOutcome run_features(const ExperimentConfig& config) {
  auto loaded = load_labeled(config);
  const auto names = loaded.features.column_names();
  auto balanced = smote_balance(loaded.features.values(), loaded.labels, config.smote);
  const Matrix& x = balanced.features;
  const LabelVector& y = balanced.labels;
  std::vector<std::string> warnings;
  if (balanced.k_clamped) warnings.push_back("SMOTE k_neighbors clamped to " + std::to_string(balanced.k_used));

  RunWriter writer(config.output_dir / "features");

  const auto lasso = lasso_coefficients(x, y, config.features.lasso_lambda, config.logreg.max_iter,
                                        config.logreg.tol);
  std::string lasso_csv = "name,coefficient\n";
  for (std::size_t f = 0; f < names.size(); ++f) lasso_csv += names[f] + "," + real(lasso[f]) + "\n";
  writer.write("lasso_coefs.csv", lasso_csv);
  writer.write("lasso_coefs.svg", svg::bar_chart("Lasso coefficients (standardized)", names, lasso));

  // log-spaced lambda path from 1e-2 to 1e6
  std::string path_csv = "lambda";
  for (const auto& n : names) path_csv += "," + n;
  path_csv += ",nonzero\n";
  Json path_json = Json::array();
  for (int k = 0; k < 10; ++k) {
    const double lambda = std::pow(10.0, -2.0 + 8.0 * k / 9.0);
    const auto coefs = lasso_coefficients(x, y, lambda, config.logreg.max_iter, config.logreg.tol);
    const auto nonzero = std::count_if(coefs.begin(), coefs.end(), [](double c) { return c != 0.0; });
    path_csv += real(lambda);
    for (double c : coefs) path_csv += "," + real(c);
    path_csv += "," + std::to_string(nonzero) + "\n";
    path_json.push_back({{"lambda", lambda}, {"nonzero", nonzero}});
  }
  writer.write("lasso_path.csv", path_csv);

  ForestParams forest_params;
  forest_params.n_trees = config.features.forest_trees;
  forest_params.max_features = config.features.forest_max_features;
  forest_params.seed = config.seed;
  forest_params.tree.max_depth = config.features.forest_max_depth;
  forest_params.tree.seed = config.seed;
  const auto forest = fit_forest(x, y, forest_params, names, config.threads);
  const auto importance = impurity_importance(forest);
  if (importance.degenerate) warnings.push_back("forest made no splits; importances are uniform");
  std::string forest_csv = "name,importance\n";
  for (std::size_t f = 0; f < names.size(); ++f) forest_csv += names[f] + "," + real(importance.values[f]) + "\n";
  writer.write("forest_importance.csv", forest_csv);
  writer.write("forest_importance.svg",
               svg::bar_chart("Random forest impurity importance", names, importance.values));

  RfeParams rfe_params;
  rfe_params.n_select = config.features.rfe_n_select;
  rfe_params.step = config.features.rfe_step;
  rfe_params.base = config.logreg;
  const auto rfe_result = rfe(x, y, rfe_params, names);
  writer.write("rfe.csv", format_rfe_csv(rfe_result));

  const auto consensus = consensus_rank(lasso, importance, rfe_result);
  writer.write("consensus.csv", format_consensus_csv(consensus));

  auto report = base_report("features", config);
  report["dataset"] = {{"rows", loaded.rows},
                       {"class_counts", class_counts(loaded.labels)},
                       {"class_counts_balanced", class_counts(y)},
                       {"synthetic_rows", balanced.origins.size()}};
  Json lasso_json, forest_json, rfe_json = Json::array(), consensus_json = Json::array();
  for (std::size_t f = 0; f < names.size(); ++f) {
    lasso_json[names[f]] = lasso[f];
    forest_json[names[f]] = importance.values[f];
    rfe_json.push_back({{"name", names[f]},
                        {"selected", rfe_result.features[f].selected},
                        {"rank", rfe_result.features[f].rank}});
    const auto& e = consensus.entries[f];
    consensus_json.push_back({{"name", e.name},
                              {"lasso_rank", e.lasso_rank},
                              {"forest_rank", e.forest_rank},
                              {"rfe_rank", e.rfe_rank},
                              {"mean_rank", e.mean_rank}});
  }
  report["lasso"] = {{"lambda", config.features.lasso_lambda}, {"coefficients", lasso_json}, {"path", path_json}};
  report["forest_importance"] = {{"n_trees", forest_params.n_trees},
                                 {"degenerate", importance.degenerate},
                                 {"values", forest_json}};
  report["rfe"] = rfe_json;
  report["consensus"] = consensus_json;
  report["warnings"] = warnings;
  return writer.finish(std::move(report));
}

RunOutcome run_train(const ExperimentConfig& config, Experiment experiment, bool tuned) {
  auto data = prepare(config, experiment_columns(config, experiment), true);
  const std::string base = std::string("train-") + to_string(experiment) + (tuned ? "-tuned" : "");
  RunWriter writer(config.output_dir / run_name(base, config, true));
  auto warnings = data.warnings;
  const auto title = title_of(experiment);
  const auto refs = reference_scores(experiment);

  auto report = base_report("train", config);
  report["experiment"] = to_string(experiment);
  report["tuned"] = tuned;
  report["dataset"] = data.dataset;

  const auto baseline = fit_and_score(experiment, data, config.logreg, config.tree, warnings);
  const auto baseline_report = classification_report(data.y_test.values, baseline.labels.values);
  const double baseline_auc = roc_auc(data.y_test.values, baseline.scores);
  report["baseline"] = evaluation_json(baseline_report, baseline_auc);
  report["baseline"]["reference_auc"] = refs.baseline_auc;
  std::string text = model_block(title, baseline_report, baseline_auc);

  const Scored* final_scores = &baseline;
  const ClassificationReport* final_report = &baseline_report;
  double final_auc = baseline_auc;
  Scored tuned_scores;
  ClassificationReport tuned_report;

  if (tuned) {
    const auto grid = tune(experiment, config, data,
                           experiment == Experiment::Health ? config.logistic_grid : config.tree_grid);
    const auto baseline_cv = tune(experiment, config, data, single_point_grid(experiment, config));
    writer.write("grid.csv", format_grid_csv(grid));

    LogRegParams logreg = config.logreg;
    TreeParams tree = config.tree;
    if (experiment == Experiment::Health) logreg = apply_params(logreg, grid.best_params());
    else tree = apply_params(tree, grid.best_params());
    tuned_scores = fit_and_score(experiment, data, logreg, tree, warnings);
    tuned_report = classification_report(data.y_test.values, tuned_scores.labels.values);
    final_auc = roc_auc(data.y_test.values, tuned_scores.scores);
    final_scores = &tuned_scores;
    final_report = &tuned_report;

    report["grid"] = grid_json(grid);
    report["cv"] = {{"baseline_mean_auc", baseline_cv.best_score()},
                    {"tuned_mean_auc", grid.best_score()},
                    {"tuned_not_worse", grid.best_score() >= baseline_cv.best_score()}};
    report["tuned_result"] = evaluation_json(tuned_report, final_auc);
    report["tuned_result"]["reference_auc"] = refs.tuned_auc;

    text += "\nGrid search: " + std::to_string(grid.n_fits) + " fits (" +
            std::to_string(grid.entries.size()) + " combinations x " + std::to_string(config.cv_folds) +
            " folds)\nBest parameters:";
    for (const auto& [k, v] : grid.best_params()) text += " " + k + "=" + v;
    text += "\nCV mean AUC: baseline " + auc_text(baseline_cv.best_score()) + ", tuned " +
            auc_text(grid.best_score()) + "\n\n";
    text += model_block("Tuned " + title, tuned_report, final_auc);
  }

  write_curves(writer, (tuned ? "Tuned " : "") + title, data.y_test, *final_scores, *final_report, final_auc);
  writer.write(experiment == Experiment::Health ? "model_logreg.txt" : "model_tree.txt",
               final_scores->model_text);
  text += warnings_block(warnings);
  writer.write("report.txt", text);
  report["warnings"] = warnings;
  return writer.finish(std::move(report));
}

RunOutcome run_baseline(const ExperimentConfig& config) {
  auto data = prepare(config, config.health_features, false);
  RunWriter writer(config.output_dir / "baseline-health");
  auto warnings = data.warnings;
  const auto scored = fit_and_score(Experiment::Health, data, config.logreg, config.tree, warnings);
  const auto report_metrics = classification_report(data.y_test.values, scored.labels.values);
  const double auc = roc_auc(data.y_test.values, scored.scores);
  const double minority_recall = report_metrics.classes[1].recall;
  const bool degenerate = minority_recall < kDegenerateRecall;
  if (degenerate) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "minority class recall %.4f is below %g: the unbalanced model barely predicts class 1",
                  minority_recall, kDegenerateRecall);
    warnings.push_back(buf);
  }

  auto report = base_report("baseline", config);
  report["experiment"] = "health";
  report["dataset"] = data.dataset;
  report["baseline"] = evaluation_json(report_metrics, auc);
  const double prevalence = static_cast<double>(data.y_train.positive_count() + data.y_test.positive_count()) /
                            static_cast<double>(data.y_train.size() + data.y_test.size());
  const double test_ratio = static_cast<double>(data.y_test.positive_count()) /
                            static_cast<double>(data.y_test.size());
  report["imbalance"] = {{"minority_recall", minority_recall},
                         {"minority_recall_degenerate", degenerate},
                         {"prevalence", prevalence},
                         {"test_positive_ratio", test_ratio}};

  write_curves(writer, "Unbalanced Health Indicators", data.y_test, scored, report_metrics, auc);
  writer.write("model_logreg.txt", scored.model_text);
  std::string text = model_block("Unbalanced Health Indicators", report_metrics, auc);
  text += degenerate ? "\nMinority-class recall is degenerate (< 0.2).\n" : "";
  text += warnings_block(warnings);
  writer.write("report.txt", text);
  report["warnings"] = warnings;
  return writer.finish(std::move(report));
}

RunOutcome run_tune_only(const ExperimentConfig& config, Experiment experiment) {
  auto data = prepare(config, experiment_columns(config, experiment), true);
  RunWriter writer(config.output_dir / run_name(std::string("tune-") + to_string(experiment), config, true));
  const auto grid = tune(experiment, config, data,
                         experiment == Experiment::Health ? config.logistic_grid : config.tree_grid);
  writer.write("grid.csv", format_grid_csv(grid));
  auto report = base_report("tune-only", config);
  report["experiment"] = to_string(experiment);
  report["dataset"] = data.dataset;
  report["grid"] = grid_json(grid);
  report["warnings"] = data.warnings;
  return writer.finish(std::move(report));
}

namespace {

ClassificationReport report_from_json(const Json& eval) {
  ConfusionMatrix cm;
  const auto& c = eval.at("confusion");
  cm.tn = c.at("tn").get<std::size_t>();
  cm.fp = c.at("fp").get<std::size_t>();
  cm.fn = c.at("fn").get<std::size_t>();
  cm.tp = c.at("tp").get<std::size_t>();
  return classification_report(cm);
}

}  // namespace

std::string render_report(const Json& report) {
  std::string out = "command: " + report.value("command", std::string("?"));
  if (report.contains("experiment")) out += " (" + report["experiment"].get<std::string>() + ")";
  out += "\n";
  if (report.contains("dataset")) out += "dataset: " + report["dataset"].dump() + "\n";
  std::string title = "Model";
  if (report.contains("experiment")) {
    title = title_of(parse_experiment(report["experiment"].get<std::string>()));
  }
  if (report.contains("baseline")) {
    out += "\n" + model_block(title, report_from_json(report["baseline"]),
                              report["baseline"]["auc"].get<double>());
  }
  if (report.contains("grid")) out += "\ngrid: " + report["grid"].dump() + "\n";
  if (report.contains("cv")) out += "cv: " + report["cv"].dump() + "\n";
  if (report.contains("tuned_result")) {
    out += "\n" + model_block("Tuned " + title, report_from_json(report["tuned_result"]),
                              report["tuned_result"]["auc"].get<double>());
  }
  if (report.contains("correlation")) out += "correlation: " + report["correlation"].dump() + "\n";
  if (report.contains("income_histogram")) out += "income histogram: " + report["income_histogram"].dump() + "\n";
  if (report.contains("rfe")) {
    out += "\nRFE:\n";
    for (const auto& f : report["rfe"]) {
      out += "Column: " + f["name"].get<std::string>() + ", Selected " +
             (f["selected"].get<bool>() ? "True" : "False") + ", Rank: " +
             std::to_string(f["rank"].get<std::size_t>()) + "\n";
    }
  }
  if (report.contains("warnings") && !report["warnings"].empty()) {
    out += "\nWarnings:\n";
    for (const auto& w : report["warnings"]) out += "  - " + w.get<std::string>() + "\n";
  }
  return out;
}

}  // namespace diabpred
