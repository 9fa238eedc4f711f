#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "diabpred/matrix.hpp"

namespace diabpred {

enum class Penalty { None, L1, L2 };

// QuasiNewton is limited-memory BFGS (orthant-wise for L1); Coordinate is a
// cyclic coordinate-wise Newton scheme with soft thresholding for L1.
enum class Optimizer { QuasiNewton, Coordinate };

const char* to_string(Penalty p);
const char* to_string(Optimizer o);
Penalty parse_penalty(const std::string& s);
Optimizer parse_optimizer(const std::string& s);

struct LogRegParams {
  Penalty penalty = Penalty::L2;
  double C = 1.0;  // inverse regularization strength
  Optimizer optimizer = Optimizer::QuasiNewton;
  std::size_t max_iter = 1000;
  double tol = 1e-6;
  bool standardize = true;
  std::uint64_t seed = 42;
};

void validate(const LogRegParams& params);

struct LogRegModel {
  // Raw feature units.
  std::vector<double> weights;
  double intercept = 0.0;
  // Fitting space (z-scored when standardize is on).
  std::vector<double> fit_weights;
  double fit_intercept = 0.0;
  std::vector<double> feature_mean;
  std::vector<double> feature_scale;

  bool converged = false;
  std::size_t n_iter = 0;
  double objective = 0.0;
  // Max-norm of the minimum-norm subgradient at the solution (fitting space).
  double grad_norm = 0.0;
  // Objective after every accepted iteration; first entry is the start point.
  std::vector<double> objective_trace;
  LogRegParams params;
};

struct LossGradient {
  double loss = 0.0;
  std::vector<double> grad;  // weights, then intercept
};

// Sum of log(1 + exp(-y'(w.x + b))) over rows with y' in {-1,+1}, plus
// ||w||^2 / (2C) for L2 or ||w||_1 / C for L1 (subgradient 0 at 0). The
// intercept is never penalized.
LossGradient loss_and_gradient(std::span<const double> weights, double intercept,
                               const Matrix& x, std::span<const int> y,
                               const LogRegParams& params);

LogRegModel fit_logreg(const Matrix& x, const LabelVector& y, const LogRegParams& params);

std::vector<double> predict_proba(const LogRegModel& model, const Matrix& x);

// Probability >= threshold maps to 1.
LabelVector predict_label(const LogRegModel& model, const Matrix& x, double threshold = 0.5);

// L1 fit with 1/C = lambda on z-scored features; returns the z-scale
// coefficients.
std::vector<double> lasso_coefficients(const Matrix& x, const LabelVector& y, double lambda,
                                       std::size_t max_iter = 1000, double tol = 1e-6);

std::string serialize(const LogRegModel& model);
LogRegModel deserialize_logreg(const std::string& text);

double sigmoid(double z);

}  // namespace diabpred
