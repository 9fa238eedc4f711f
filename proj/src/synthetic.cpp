#include "diabpred/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "diabpred/rng.hpp"

namespace diabpred {

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double bernoulli(double p) { return rng_.uniform01() < p ? 1.0 : 0.0; }

  double normal(double mean, double sd) {
    double u1 = rng_.uniform01();
    while (u1 <= 0.0) u1 = rng_.uniform01();
    const double u2 = rng_.uniform01();
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  // index into cumulative weights, returned as code `offset + i`
  double categorical(const std::vector<double>& weights, int offset) {
    double total = 0;
    for (double w : weights) total += w;
    double u = rng_.uniform01() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (u < weights[i]) return static_cast<double>(offset + static_cast<int>(i));
      u -= weights[i];
    }
    return static_cast<double>(offset + static_cast<int>(weights.size()) - 1);
  }

  double days(double p_any, double mean) {
    if (rng_.uniform01() >= p_any) return 0.0;
    return std::clamp(std::round(-mean * std::log(1.0 - rng_.uniform01())), 1.0, 30.0);
  }

 private:
  Rng rng_;
};

}  // namespace

DataTable synthetic_brfss(std::size_t rows, std::uint64_t seed) {
  const auto schema = canonical_schema();
  Matrix m(0, schema.size());
  m.reserve_rows(rows);
  Draw d(seed);
  std::vector<double> row(schema.size());
  const std::vector<double> age_w{2, 3, 4, 5, 6, 7, 10, 12, 13, 13, 10, 7, 8};
  const std::vector<double> income_w{4, 5, 7, 8, 10, 14, 17, 35};
  const std::vector<double> edu_w{0.1, 1.6, 4, 25, 28, 42};

  for (std::size_t r = 0; r < rows; ++r) {
    const double age = d.categorical(age_w, 1);
    const double income = d.categorical(income_w, 1);
    const double education = std::min(6.0, d.categorical(edu_w, 1) + (income >= 7 ? d.bernoulli(0.3) : 0.0));
    const double sex = d.bernoulli(0.44);
    const double bmi = std::clamp(std::round(d.normal(28.4, 6.5)), 12.0, 98.0);
    const double high_bp = d.bernoulli(logistic(-3.2 + 0.28 * age + 0.07 * (bmi - 28)));
    const double high_chol = d.bernoulli(logistic(-2.0 + 0.18 * age + 0.8 * high_bp));
    const double chol_check = d.bernoulli(0.93 + 0.04 * high_chol);
    const double smoker = d.bernoulli(0.44);
    const double alcohol = d.bernoulli(0.056);
    const double phys_activity = d.bernoulli(logistic(1.6 - 0.05 * (bmi - 28) + 0.12 * (income - 5)));
    const double fruits = d.bernoulli(0.63);
    const double veggies = d.bernoulli(0.81);
    const double healthcare = d.bernoulli(income >= 4 ? 0.97 : 0.88);
    const double no_doc = d.bernoulli(income <= 3 ? 0.2 : 0.06);
    const double stroke = d.bernoulli(logistic(-5.2 + 0.2 * age + 0.5 * high_bp));
    const double heart = d.bernoulli(logistic(-4.6 + 0.25 * age + 0.5 * high_bp + 0.4 * high_chol + 0.3 * smoker));
    const double gen_latent = 2.5 + 0.04 * (bmi - 28) - 0.15 * (income - 5) + 0.3 * high_bp +
                              0.6 * heart - 0.35 * phys_activity + d.normal(0, 0.9);
    const double gen_hlth = std::clamp(std::round(gen_latent), 1.0, 5.0);
    const double phys_hlth = d.days(0.2 + 0.1 * (gen_hlth - 1), 6 + 2 * gen_hlth);
    const double ment_hlth = d.days(0.3, 7 + 0.8 * gen_hlth);
    const double diff_walk = d.bernoulli(logistic(-4.0 + 0.6 * gen_hlth + 0.05 * phys_hlth + 0.1 * age));

    const double z = -6.3 + 0.75 * high_bp + 0.55 * high_chol + 0.9 * chol_check + 0.06 * (bmi - 28) +
                     0.13 * age + 0.45 * gen_hlth - 0.06 * income - 0.5 * alcohol + 0.25 * heart +
                     0.2 * diff_walk + 0.2 * sex;
    const double positive = d.bernoulli(logistic(z));
    const double prediabetes = positive == 0.0 ? d.bernoulli(0.02) : 0.0;
    const double target = positive == 1.0 ? 2.0 : prediabetes;

    row = {target, high_bp, high_chol, chol_check, bmi, smoker, stroke, heart, phys_activity, fruits,
           veggies, alcohol, healthcare, no_doc, gen_hlth, ment_hlth, phys_hlth, diff_walk, sex, age,
           education, income};
    m.append_row(row);
  }
  return DataTable(schema, std::move(m));
}

}  // namespace diabpred
