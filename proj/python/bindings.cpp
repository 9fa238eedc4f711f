// Python bindings for the core pipeline. Arrays cross the boundary as
// float64 / int32 numpy arrays; reports come back as plain dicts.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "diabpred/balance.hpp"
#include "diabpred/config.hpp"
#include "diabpred/dataset.hpp"
#include "diabpred/error.hpp"
#include "diabpred/experiment.hpp"
#include "diabpred/logistic.hpp"
#include "diabpred/metrics.hpp"
#include "diabpred/tree.hpp"
#include "diabpred/tune.hpp"

namespace py = pybind11;
using namespace diabpred;

namespace {

using F64 = py::array_t<double, py::array::c_style | py::array::forcecast>;
using I32 = py::array_t<int, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const F64& a) {
  if (a.ndim() != 2) throw Error(ErrorKind::DimensionMismatch, "expected a 2-D array");
  const auto r = static_cast<std::size_t>(a.shape(0)), c = static_cast<std::size_t>(a.shape(1));
  return Matrix(r, c, std::vector<double>(a.data(), a.data() + r * c));
}

std::vector<int> to_ints(const I32& a) {
  if (a.ndim() != 1) throw Error(ErrorKind::DimensionMismatch, "expected a 1-D array");
  return {a.data(), a.data() + a.shape(0)};
}

std::vector<double> to_doubles(const F64& a) {
  if (a.ndim() != 1) throw Error(ErrorKind::DimensionMismatch, "expected a 1-D array");
  return {a.data(), a.data() + a.shape(0)};
}

F64 from_matrix(const Matrix& m) {
  F64 out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

template <typename T>
py::array_t<T> from_vector(const std::vector<T>& v) {
  return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::object to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

ExperimentConfig make_config(const std::string& data, const std::string& out, const py::dict& overrides) {
  ExperimentConfig c;
  c.data_path = data;
  c.output_dir = out;
  for (const auto& [k, v] : overrides) {
    set_config_value(c, py::str(k).cast<std::string>(), py::str(v).cast<std::string>());
  }
  validate(c);
  return c;
}

py::dict report_dict(const ClassificationReport& r) {
  auto row = [](const ClassMetrics& m) {
    py::dict d;
    d["precision"] = m.precision;
    d["recall"] = m.recall;
    d["f1"] = m.f1;
    d["support"] = m.support;
    return d;
  };
  py::dict d;
  d["0"] = row(r.classes[0]);
  d["1"] = row(r.classes[1]);
  d["accuracy"] = r.accuracy;
  d["macro_avg"] = row(r.macro);
  d["weighted_avg"] = row(r.weighted);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Diabetes risk pipeline: BRFSS loading, SMOTE, logistic regression, CART, metrics, tuning.";

  static py::exception<Error> exc(m, "DiabpredError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = static_cast<const py::object&>(exc)(e.what());
      inst.attr("kind") = to_string(e.kind());
      PyErr_SetObject(exc.ptr(), inst.ptr());
    }
  });

  m.def("error_kind_exit_code", [](const std::string& kind) {
    for (int k = 0; k <= static_cast<int>(ErrorKind::Format); ++k) {
      if (kind == to_string(static_cast<ErrorKind>(k))) return exit_code_for(static_cast<ErrorKind>(k));
    }
    throw py::value_error("unknown error kind " + kind);
  });

  m.def("load_csv", [](const std::string& path) {
    const auto t = load_csv(path);
    return py::make_tuple(t.column_names(), from_matrix(t.values()));
  }, py::arg("path"), "Read a BRFSS CSV; returns (column names, float64 matrix).");

  m.def("smote", [](const F64& x, const I32& y, std::size_t k, std::uint64_t seed, double ratio) {
    SmoteParams p;
    p.k_neighbors = k;
    p.seed = seed;
    p.target_ratio = ratio;
    const auto r = smote_balance(to_matrix(x), LabelVector(to_ints(y)), p);
    return py::make_tuple(from_matrix(r.features), from_vector(r.labels.values));
  }, py::arg("x"), py::arg("y"), py::arg("k_neighbors") = 5, py::arg("seed") = 42, py::arg("target_ratio") = 1.0);

  py::class_<LogRegModel>(m, "LogisticModel")
      .def_readonly("weights", &LogRegModel::weights)
      .def_readonly("intercept", &LogRegModel::intercept)
      .def_readonly("converged", &LogRegModel::converged)
      .def_readonly("n_iter", &LogRegModel::n_iter)
      .def_readonly("objective", &LogRegModel::objective)
      .def("predict_proba", [](const LogRegModel& mdl, const F64& x) {
        return from_vector(predict_proba(mdl, to_matrix(x)));
      })
      .def("predict", [](const LogRegModel& mdl, const F64& x, double threshold) {
        return from_vector(predict_label(mdl, to_matrix(x), threshold).values);
      }, py::arg("x"), py::arg("threshold") = 0.5)
      .def("to_text", [](const LogRegModel& mdl) { return serialize(mdl); })
      .def_static("from_text", &deserialize_logreg);

  m.def("fit_logistic", [](const F64& x, const I32& y, const std::string& penalty, double C,
                           const std::string& optimizer, std::size_t max_iter, double tol, bool standardize) {
    LogRegParams p;
    p.penalty = parse_penalty(penalty);
    p.C = C;
    p.optimizer = parse_optimizer(optimizer);
    p.max_iter = max_iter;
    p.tol = tol;
    p.standardize = standardize;
    return fit_logreg(to_matrix(x), LabelVector(to_ints(y)), p);
  }, py::arg("x"), py::arg("y"), py::arg("penalty") = "l2", py::arg("C") = 1.0, py::arg("optimizer") = "quasi_newton",
     py::arg("max_iter") = 1000, py::arg("tol") = 1e-6, py::arg("standardize") = true);

  py::class_<DecisionTreeModel>(m, "TreeModel")
      .def_property_readonly("depth", &DecisionTreeModel::depth)
      .def_property_readonly("leaf_count", &DecisionTreeModel::leaf_count)
      .def_property_readonly("node_count", [](const DecisionTreeModel& t) { return t.nodes.size(); })
      .def("predict", [](const DecisionTreeModel& t, const F64& x) {
        const auto p = predict_tree(t, to_matrix(x));
        return py::make_tuple(from_vector(p.labels.values), from_vector(p.scores));
      }, "Returns (labels, leaf positive fractions).")
      .def("to_text", [](const DecisionTreeModel& t) { return serialize(t); })
      .def_static("from_text", &deserialize_tree);

  m.def("fit_tree", [](const F64& x, const I32& y, std::optional<std::size_t> max_depth,
                       std::size_t min_samples_split, std::size_t min_samples_leaf) {
    TreeParams p;
    p.max_depth = max_depth;
    p.min_samples_split = min_samples_split;
    p.min_samples_leaf = min_samples_leaf;
    return fit_tree(to_matrix(x), LabelVector(to_ints(y)), p);
  }, py::arg("x"), py::arg("y"), py::arg("max_depth") = py::none(), py::arg("min_samples_split") = 2,
     py::arg("min_samples_leaf") = 1);

  m.def("roc_auc", [](const I32& y, const F64& s) { return roc_auc(to_ints(y), to_doubles(s)); });
  m.def("classification_report", [](const I32& t, const I32& p) {
    return report_dict(classification_report(to_ints(t), to_ints(p)));
  });
  m.def("format_report", [](const I32& t, const I32& p) {
    return format_report(classification_report(to_ints(t), to_ints(p)));
  });

  m.def("grid_search", [](const F64& x, const I32& y, const std::string& family, std::size_t folds,
                          std::uint64_t seed) {
    const bool logistic = family == "logistic";
    if (!logistic && family != "tree") throw py::value_error("family must be 'logistic' or 'tree'");
    CvConfig cv;
    cv.folds = folds;
    cv.seed = seed;
    const auto r = grid_search(to_matrix(x), LabelVector(to_ints(y)),
                               logistic ? ModelFamily::Logistic : ModelFamily::Tree,
                               logistic ? default_logistic_grid() : default_tree_grid(), cv);
    py::dict d;
    d["n_fits"] = r.n_fits;
    py::dict best;
    for (const auto& [k, v] : r.best_params()) best[py::str(k)] = v;
    d["best_params"] = best;
    d["best_mean_auc"] = r.best_score();
    d["csv"] = format_grid_csv(r);
    return d;
  }, py::arg("x"), py::arg("y"), py::arg("family"), py::arg("folds") = 5, py::arg("seed") = 42);

  m.def("run", [](const std::string& command, const std::string& data, const std::string& out,
                  const std::string& experiment, bool tuned, const py::dict& config) {
    const auto c = make_config(data, out, config);
    RunOutcome r;
    if (command == "eda") r = run_eda(c);
    else if (command == "features") r = run_features(c);
    else if (command == "train") r = run_train(c, parse_experiment(experiment), tuned);
    else if (command == "baseline") r = run_baseline(c);
    else if (command == "tune-only") r = run_tune_only(c, parse_experiment(experiment));
    else throw py::value_error("unknown command " + command);
    return py::make_tuple(r.run_dir.string(), to_py(r.report));
  }, py::arg("command"), py::arg("data"), py::arg("out") = "runs", py::arg("experiment") = "health",
     py::arg("tuned") = false, py::arg("config") = py::dict(),
     "Run a pipeline command; returns (run directory, report dict).");

  m.def("render_report", [](const py::object& report) {
    return render_report(Json::parse(py::module_::import("json").attr("dumps")(report).cast<std::string>()));
  });
}
