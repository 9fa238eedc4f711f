#include "diabpred/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "diabpred/error.hpp"

namespace diabpred {

const char* to_string(Penalty p) {
  switch (p) {
    case Penalty::None: return "none";
    case Penalty::L1: return "l1";
    case Penalty::L2: return "l2";
  }
  return "?";
}

const char* to_string(Optimizer o) {
  return o == Optimizer::QuasiNewton ? "quasi_newton" : "coordinate";
}

Penalty parse_penalty(const std::string& s) {
  if (s == "none") return Penalty::None;
  if (s == "l1" || s == "L1") return Penalty::L1;
  if (s == "l2" || s == "L2") return Penalty::L2;
  throw Error(ErrorKind::BadParams, "unknown penalty '" + s + "'");
}

Optimizer parse_optimizer(const std::string& s) {
  if (s == "quasi_newton" || s == "variantA" || s == "A") return Optimizer::QuasiNewton;
  if (s == "coordinate" || s == "variantB" || s == "B") return Optimizer::Coordinate;
  throw Error(ErrorKind::BadParams, "unknown optimizer '" + s + "'");
}

void validate(const LogRegParams& params) {
  if (!(params.C > 0.0) || !std::isfinite(params.C)) {
    throw Error(ErrorKind::BadParams, "C must be positive");
  }
  if (!(params.tol > 0.0)) throw Error(ErrorKind::BadParams, "tol must be positive");
  if (params.max_iter < 1) throw Error(ErrorKind::BadParams, "max_iter must be >= 1");
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

// log(1 + exp(-m))
double logistic_loss(double m) {
  return m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
}

// loss(m + h) - loss(m) without cancellation, so that line searches can
// resolve decreases far below the rounding level of the total objective.
double loss_delta(double m, double h) {
  if (h == 0.0) return 0.0;
  if (std::fabs(h) > 30.0) return logistic_loss(m + h) - logistic_loss(m);
  return std::log1p(sigmoid(-m) * std::expm1(-h));
}

double sign(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

// Objective over theta = (w_1..w_p, b) on a fixed design. The L2 term is part
// of the smooth part; the L1 term is handled separately.
class Problem {
 public:
  Problem(const Matrix& z, std::span<const int> y, Penalty penalty, double c)
      : z_(z), penalty_(penalty), inv_c_(1.0 / c), p_(z.cols()) {
    signs_.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) signs_[i] = y[i] == 1 ? 1.0 : -1.0;
  }

  std::size_t dim() const { return p_ + 1; }
  std::size_t n() const { return signs_.size(); }
  bool l1() const { return penalty_ == Penalty::L1; }
  double lambda() const { return inv_c_; }

  void margins(std::span<const double> theta, std::vector<double>& m) const {
    m.resize(n());
    for (std::size_t i = 0; i < n(); ++i) m[i] = signs_[i] * linear(theta, i);
  }

  double value(std::span<const double> theta, std::span<const double> m) const {
    double loss = 0.0;
    for (double mi : m) loss += logistic_loss(mi);
    return loss + penalty_value(theta);
  }

  double penalty_value(std::span<const double> theta) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < p_; ++j) {
      if (penalty_ == Penalty::L2) acc += 0.5 * theta[j] * theta[j];
      if (penalty_ == Penalty::L1) acc += std::fabs(theta[j]);
    }
    return acc * inv_c_;
  }

  // Gradient of the smooth part (data term + L2).
  void smooth_gradient(std::span<const double> theta, std::span<const double> m,
                       std::vector<double>& g) const {
    g.assign(dim(), 0.0);
    for (std::size_t i = 0; i < n(); ++i) {
      const double coef = -signs_[i] * sigmoid(-m[i]);
      auto row = z_.row(i);
      for (std::size_t j = 0; j < p_; ++j) g[j] += coef * row[j];
      g[p_] += coef;
    }
    if (penalty_ == Penalty::L2) {
      for (std::size_t j = 0; j < p_; ++j) g[j] += theta[j] * inv_c_;
    }
  }

  // Hessian of the smooth part, (p+1)x(p+1) row-major.
  void smooth_hessian(std::span<const double> m, std::vector<double>& h) const {
    const std::size_t d = dim();
    h.assign(d * d, 0.0);
    std::vector<double> zt(d, 1.0);
    for (std::size_t i = 0; i < n(); ++i) {
      const double s = sigmoid(m[i]);
      const double w = s * (1.0 - s);
      auto row = z_.row(i);
      std::copy(row.begin(), row.end(), zt.begin());
      for (std::size_t a = 0; a < d; ++a) {
        const double wa = w * zt[a];
        for (std::size_t b = a; b < d; ++b) h[a * d + b] += wa * zt[b];
      }
    }
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < a; ++b) h[a * d + b] = h[b * d + a];
    }
    if (penalty_ == Penalty::L2) {
      for (std::size_t j = 0; j < p_; ++j) h[j * d + j] += inv_c_;
    }
  }

  // f(theta_new) - f(theta_old); fills the new margins.
  double delta(std::span<const double> theta_old, std::span<const double> m_old,
               std::span<const double> theta_new, std::vector<double>& m_new) const {
    std::vector<double> step(dim());
    for (std::size_t j = 0; j < dim(); ++j) step[j] = theta_new[j] - theta_old[j];
    m_new.resize(n());
    double acc = 0.0;
    for (std::size_t i = 0; i < n(); ++i) {
      const double h = signs_[i] * linear(step, i);
      m_new[i] = m_old[i] + h;
      acc += loss_delta(m_old[i], h);
    }
    double pen = 0.0;
    for (std::size_t j = 0; j < p_; ++j) {
      if (penalty_ == Penalty::L2) pen += 0.5 * step[j] * (theta_new[j] + theta_old[j]);
      if (penalty_ == Penalty::L1) pen += std::fabs(theta_new[j]) - std::fabs(theta_old[j]);
    }
    return acc + pen * inv_c_;
  }

  // Minimum-norm subgradient of the full objective.
  void pseudo_gradient(std::span<const double> theta, std::span<const double> g,
                       std::vector<double>& pg) const {
    pg.assign(g.begin(), g.end());
    if (!l1()) return;
    const double lam = inv_c_;
    for (std::size_t j = 0; j < p_; ++j) {
      if (theta[j] > 0) {
        pg[j] = g[j] + lam;
      } else if (theta[j] < 0) {
        pg[j] = g[j] - lam;
      } else if (g[j] + lam < 0) {
        pg[j] = g[j] + lam;
      } else if (g[j] - lam > 0) {
        pg[j] = g[j] - lam;
      } else {
        pg[j] = 0.0;
      }
    }
  }

 private:
  double linear(std::span<const double> theta, std::size_t i) const {
    auto row = z_.row(i);
    double acc = theta[p_];
    for (std::size_t j = 0; j < p_; ++j) acc += theta[j] * row[j];
    return acc;
  }

  const Matrix& z_;
  std::vector<double> signs_;
  Penalty penalty_;
  double inv_c_;
  std::size_t p_;
};

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

struct Solution {
  std::vector<double> theta;
  bool converged = false;
  std::size_t n_iter = 0;
  double grad_norm = 0.0;
  std::vector<double> trace;
};

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;

// Limited-memory BFGS; with an L1 term it runs orthant-wise (steps are
// projected onto the orthant chosen from the pseudo-gradient).
Solution solve_quasi_newton(const Problem& prob, const LogRegParams& params) {
  const std::size_t d = prob.dim();
  const std::size_t p = d - 1;
  const std::size_t memory = 10;

  Solution sol;
  sol.theta.assign(d, 0.0);
  std::vector<double> m, m_new, g, g_new, pg, dir(d), theta_new(d), orthant(d);
  prob.margins(sol.theta, m);
  double f = prob.value(sol.theta, m);
  sol.trace.push_back(f);
  prob.smooth_gradient(sol.theta, m, g);
  prob.pseudo_gradient(sol.theta, g, pg);
  sol.grad_norm = max_abs(pg);
  if (sol.grad_norm <= params.tol) {
    sol.converged = true;
    return sol;
  }

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  std::vector<double> alpha_buf(memory);

  for (std::size_t iter = 1; iter <= params.max_iter; ++iter) {
    // two-loop recursion on the pseudo-gradient
    for (std::size_t j = 0; j < d; ++j) dir[j] = -pg[j];
    const std::size_t k = s_hist.size();
    for (std::size_t t = k; t-- > 0;) {
      alpha_buf[t] = rho_hist[t] * dot(s_hist[t], dir);
      for (std::size_t j = 0; j < d; ++j) dir[j] -= alpha_buf[t] * y_hist[t][j];
    }
    if (k > 0) {
      const double gamma = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
      for (auto& v : dir) v *= gamma;
    }
    for (std::size_t t = 0; t < k; ++t) {
      const double beta = rho_hist[t] * dot(y_hist[t], dir);
      for (std::size_t j = 0; j < d; ++j) dir[j] += s_hist[t][j] * (alpha_buf[t] - beta);
    }
    if (prob.l1()) {
      for (std::size_t j = 0; j < d; ++j) {
        if (dir[j] * pg[j] >= 0) dir[j] = 0.0;
      }
    }
    if (dot(dir, pg) >= 0) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (std::size_t j = 0; j < d; ++j) dir[j] = -pg[j];
    }
    for (std::size_t j = 0; j < p; ++j) {
      orthant[j] = sol.theta[j] != 0.0 ? sign(sol.theta[j]) : sign(-pg[j]);
    }

    double step = s_hist.empty() ? std::min(1.0, 1.0 / std::sqrt(dot(pg, pg))) : 1.0;
    bool accepted = false;
    double change = 0.0;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      for (std::size_t j = 0; j < d; ++j) theta_new[j] = sol.theta[j] + step * dir[j];
      if (prob.l1()) {
        for (std::size_t j = 0; j < p; ++j) {
          if (theta_new[j] * orthant[j] <= 0) theta_new[j] = 0.0;
        }
      }
      double decrease_bound = 0.0;
      for (std::size_t j = 0; j < d; ++j) decrease_bound += pg[j] * (theta_new[j] - sol.theta[j]);
      change = prob.delta(sol.theta, m, theta_new, m_new);
      if (change <= kArmijo * decrease_bound && decrease_bound < 0) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    prob.smooth_gradient(theta_new, m_new, g_new);
    std::vector<double> s(d), y(d);
    for (std::size_t j = 0; j < d; ++j) {
      s[j] = theta_new[j] - sol.theta[j];
      y[j] = g_new[j] - g[j];
    }
    const double sy = dot(s, y);
    if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
      if (s_hist.size() == memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
    }

    sol.theta.swap(theta_new);
    m.swap(m_new);
    g.swap(g_new);
    f += change;
    sol.trace.push_back(f);
    sol.n_iter = iter;
    prob.pseudo_gradient(sol.theta, g, pg);
    sol.grad_norm = max_abs(pg);
    if (sol.grad_norm <= 10 * params.tol && max_abs(s) <= params.tol) {
      sol.converged = true;
      break;
    }
  }
  sol.converged = sol.converged || sol.grad_norm <= 10 * params.tol;
  return sol;
}

// Cyclic coordinate scheme: each outer iteration minimizes the quadratic
// model of the smooth part (plus the exact L1 term) by cyclic coordinate
// descent, then line-searches the true objective along the result.
Solution solve_coordinate(const Problem& prob, const LogRegParams& params) {
  const std::size_t d = prob.dim();
  const std::size_t p = d - 1;
  const double lam = prob.l1() ? prob.lambda() : 0.0;

  Solution sol;
  sol.theta.assign(d, 0.0);
  std::vector<double> m, m_new, g, pg, hess, dir(d), hd(d), theta_new(d);
  prob.margins(sol.theta, m);
  double f = prob.value(sol.theta, m);
  sol.trace.push_back(f);
  prob.smooth_gradient(sol.theta, m, g);
  prob.pseudo_gradient(sol.theta, g, pg);
  sol.grad_norm = max_abs(pg);
  if (sol.grad_norm <= params.tol) {
    sol.converged = true;
    return sol;
  }

  for (std::size_t iter = 1; iter <= params.max_iter; ++iter) {
    prob.smooth_hessian(m, hess);
    std::fill(dir.begin(), dir.end(), 0.0);
    std::fill(hd.begin(), hd.end(), 0.0);
    for (int sweep = 0; sweep < 1000; ++sweep) {
      double biggest = 0.0;
      double scale = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double hjj = std::max(hess[j * d + j], 1e-12);
        const double gq = g[j] + hd[j];
        double delta;
        if (j < p && lam > 0) {
          const double w = sol.theta[j] + dir[j];
          if (gq + lam <= hjj * w) {
            delta = -(gq + lam) / hjj;
          } else if (gq - lam >= hjj * w) {
            delta = -(gq - lam) / hjj;
          } else {
            delta = -w;
          }
        } else {
          delta = -gq / hjj;
        }
        if (delta != 0.0) {
          dir[j] += delta;
          for (std::size_t a = 0; a < d; ++a) hd[a] += delta * hess[a * d + j];
        }
        biggest = std::max(biggest, std::fabs(delta));
        scale = std::max(scale, std::fabs(dir[j]));
      }
      if (biggest <= 1e-13 * (1.0 + scale)) break;
    }

    double model_decrease = dot(g, dir);
    for (std::size_t j = 0; j < p && lam > 0; ++j) {
      model_decrease += lam * (std::fabs(sol.theta[j] + dir[j]) - std::fabs(sol.theta[j]));
    }
    if (!(model_decrease < 0)) break;

    double step = 1.0;
    bool accepted = false;
    double change = 0.0;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      for (std::size_t j = 0; j < d; ++j) theta_new[j] = sol.theta[j] + step * dir[j];
      change = prob.delta(sol.theta, m, theta_new, m_new);
      if (change <= 0.01 * step * model_decrease) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    double moved = 0.0;
    for (std::size_t j = 0; j < d; ++j) moved = std::max(moved, std::fabs(theta_new[j] - sol.theta[j]));
    sol.theta.swap(theta_new);
    m.swap(m_new);
    f += change;
    sol.trace.push_back(f);
    sol.n_iter = iter;
    prob.smooth_gradient(sol.theta, m, g);
    prob.pseudo_gradient(sol.theta, g, pg);
    sol.grad_norm = max_abs(pg);
    if (sol.grad_norm <= 10 * params.tol && moved <= params.tol) {
      sol.converged = true;
      break;
    }
  }
  sol.converged = sol.converged || sol.grad_norm <= 10 * params.tol;
  return sol;
}

void check_dims(const Matrix& x, std::size_t labels) {
  if (x.rows() != labels) {
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(x.rows()) + " rows but " + std::to_string(labels) + " labels");
  }
}

struct Standardized {
  Matrix z;
  std::vector<double> mean;
  std::vector<double> scale;
};

Standardized standardize(const Matrix& x, bool enabled) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  Standardized out{x, std::vector<double>(p, 0.0), std::vector<double>(p, 1.0)};
  if (!enabled || n == 0) return out;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < p; ++c) out.mean[c] += x(r, c);
  }
  for (auto& v : out.mean) v /= static_cast<double>(n);
  std::vector<double> var(p, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < p; ++c) {
      const double t = x(r, c) - out.mean[c];
      var[c] += t * t;
    }
  }
  for (std::size_t c = 0; c < p; ++c) {
    const double sd = std::sqrt(var[c] / static_cast<double>(n));
    out.scale[c] = sd > 0 ? sd : 1.0;
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < p; ++c) out.z(r, c) = (x(r, c) - out.mean[c]) / out.scale[c];
  }
  return out;
}

}  // namespace

LossGradient loss_and_gradient(std::span<const double> weights, double intercept,
                               const Matrix& x, std::span<const int> y,
                               const LogRegParams& params) {
  check_dims(x, y.size());
  if (weights.size() != x.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "weight length does not match feature count");
  }
  check_binary(y);
  Problem prob(x, y, params.penalty, params.C);
  std::vector<double> theta(weights.begin(), weights.end());
  theta.push_back(intercept);
  std::vector<double> m, g, pg;
  prob.margins(theta, m);
  LossGradient out;
  out.loss = prob.value(theta, m);
  prob.smooth_gradient(theta, m, g);
  if (params.penalty == Penalty::L1) {
    for (std::size_t j = 0; j < weights.size(); ++j) g[j] += sign(weights[j]) / params.C;
  }
  out.grad = std::move(g);
  return out;
}

LogRegModel fit_logreg(const Matrix& x, const LabelVector& y, const LogRegParams& params) {
  validate(params);
  check_dims(x, y.size());
  check_binary(y.values);
  if (y.size() < 2 || !y.has_both_classes()) {
    throw Error(ErrorKind::SingleClass, "logistic regression needs both classes");
  }
  const auto stdz = standardize(x, params.standardize);
  const Problem prob(stdz.z, y.values, params.penalty, params.C);
  const Solution sol = params.optimizer == Optimizer::QuasiNewton
                           ? solve_quasi_newton(prob, params)
                           : solve_coordinate(prob, params);

  const std::size_t p = x.cols();
  LogRegModel model;
  model.params = params;
  model.feature_mean = stdz.mean;
  model.feature_scale = stdz.scale;
  model.fit_weights.assign(sol.theta.begin(), sol.theta.begin() + static_cast<std::ptrdiff_t>(p));
  model.fit_intercept = sol.theta[p];
  model.weights.resize(p);
  model.intercept = model.fit_intercept;
  for (std::size_t j = 0; j < p; ++j) {
    model.weights[j] = model.fit_weights[j] / stdz.scale[j];
    model.intercept -= model.weights[j] * stdz.mean[j];
  }
  model.converged = sol.converged;
  model.n_iter = sol.n_iter;
  model.grad_norm = sol.grad_norm;
  model.objective_trace = sol.trace;
  std::vector<double> m;
  prob.margins(sol.theta, m);
  model.objective = prob.value(sol.theta, m);
  return model;
}

std::vector<double> predict_proba(const LogRegModel& model, const Matrix& x) {
  if (x.cols() != model.weights.size()) {
    throw Error(ErrorKind::DimensionMismatch, "feature count does not match model");
  }
  std::vector<double> out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    // evaluate in fitting space so that rescaled inputs give identical output
    auto row = x.row(r);
    double z = model.fit_intercept;
    for (std::size_t j = 0; j < row.size(); ++j) {
      z += model.fit_weights[j] * ((row[j] - model.feature_mean[j]) / model.feature_scale[j]);
    }
    out[r] = sigmoid(z);
  }
  return out;
}

LabelVector predict_label(const LogRegModel& model, const Matrix& x, double threshold) {
  const auto proba = predict_proba(model, x);
  LabelVector out;
  out.values.resize(proba.size());
  for (std::size_t i = 0; i < proba.size(); ++i) out.values[i] = proba[i] >= threshold ? 1 : 0;
  return out;
}

std::vector<double> lasso_coefficients(const Matrix& x, const LabelVector& y, double lambda,
                                       std::size_t max_iter, double tol) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::BadParams, "lambda must be positive");
  LogRegParams params;
  params.penalty = Penalty::L1;
  params.C = 1.0 / lambda;
  params.optimizer = Optimizer::Coordinate;
  params.max_iter = max_iter;
  params.tol = tol;
  params.standardize = true;
  return fit_logreg(x, y, params).fit_weights;
}

namespace {

std::string join(std::span<const double> values) {
  std::string out;
  char buf[40];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", values[i]);
    if (i) out += ',';
    out += buf;
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Format, "bad number '" + item + "' in model file");
    }
  }
  return out;
}

}  // namespace

std::string serialize(const LogRegModel& model) {
  std::string out = "format = diabpred-logreg-1\n";
  out += "penalty = " + std::string(to_string(model.params.penalty)) + "\n";
  out += "C = " + fmt(model.params.C) + "\n";
  out += "optimizer = " + std::string(to_string(model.params.optimizer)) + "\n";
  out += "max_iter = " + std::to_string(model.params.max_iter) + "\n";
  out += "tol = " + fmt(model.params.tol) + "\n";
  out += "standardize = " + std::string(model.params.standardize ? "true" : "false") + "\n";
  out += "seed = " + std::to_string(model.params.seed) + "\n";
  out += "weights = " + join(model.weights) + "\n";
  out += "intercept = " + fmt(model.intercept) + "\n";
  out += "fit_weights = " + join(model.fit_weights) + "\n";
  out += "fit_intercept = " + fmt(model.fit_intercept) + "\n";
  out += "feature_mean = " + join(model.feature_mean) + "\n";
  out += "feature_scale = " + join(model.feature_scale) + "\n";
  out += "converged = " + std::string(model.converged ? "true" : "false") + "\n";
  out += "n_iter = " + std::to_string(model.n_iter) + "\n";
  out += "objective = " + fmt(model.objective) + "\n";
  out += "grad_norm = " + fmt(model.grad_norm) + "\n";
  return out;
}

LogRegModel deserialize_logreg(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw Error(ErrorKind::Format, "bad model line '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw Error(ErrorKind::Format, "model file lacks '" + key + "'");
    return it->second;
  };
  if (get("format") != "diabpred-logreg-1") throw Error(ErrorKind::Format, "unknown model format");
  LogRegModel m;
  m.params.penalty = parse_penalty(get("penalty"));
  m.params.C = split_doubles(get("C")).at(0);
  m.params.optimizer = parse_optimizer(get("optimizer"));
  m.params.max_iter = std::stoul(get("max_iter"));
  m.params.tol = split_doubles(get("tol")).at(0);
  m.params.standardize = get("standardize") == "true";
  m.params.seed = std::stoull(get("seed"));
  m.weights = split_doubles(get("weights"));
  m.intercept = split_doubles(get("intercept")).at(0);
  m.fit_weights = split_doubles(get("fit_weights"));
  m.fit_intercept = split_doubles(get("fit_intercept")).at(0);
  m.feature_mean = split_doubles(get("feature_mean"));
  m.feature_scale = split_doubles(get("feature_scale"));
  m.converged = get("converged") == "true";
  m.n_iter = std::stoul(get("n_iter"));
  m.objective = split_doubles(get("objective")).at(0);
  m.grad_norm = split_doubles(get("grad_norm")).at(0);
  const auto p = m.weights.size();
  if (m.fit_weights.size() != p || m.feature_mean.size() != p || m.feature_scale.size() != p) {
    throw Error(ErrorKind::Format, "model vectors have inconsistent lengths");
  }
  return m;
}

}  // namespace diabpred
