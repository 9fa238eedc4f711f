#include <algorithm>
#include <numeric>

#include "diabpred/balance.hpp"
#include "diabpred/error.hpp"
#include "diabpred/rng.hpp"
#include "doctest.h"

using namespace diabpred;

namespace {

struct Instance {
  Matrix x;
  LabelVector y;
};

// Integer-coded columns so exact duplicates and distance ties are common.
Instance random_instance(Rng& rng, std::size_t n, std::size_t p, double positive_rate) {
  Instance inst{Matrix(n, p), LabelVector(std::vector<int>(n))};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < p; ++c) inst.x(r, c) = static_cast<double>(rng.uniform_index(4));
    inst.y.values[r] = rng.uniform01() < positive_rate ? 1 : 0;
  }
  return inst;
}

// k nearest rows by (squared distance, row index), excluding the row itself.
std::vector<std::size_t> brute_knn(const Matrix& pts, std::size_t r, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t o = 0; o < pts.rows(); ++o) {
    if (o == r) continue;
    double d = 0;
    for (std::size_t c = 0; c < pts.cols(); ++c) d += (pts(r, c) - pts(o, c)) * (pts(r, c) - pts(o, c));
    all.emplace_back(d, o);
  }
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(all[i].second);
  return out;
}

ErrorKind kind_of(const Matrix& x, const LabelVector& y, SmoteParams p = {}) {
  try {
    smote_balance(x, y, p);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("balanced input is returned unchanged") {
  Matrix x(4, 1, std::vector<double>{1, 2, 3, 4});
  LabelVector y({0, 1, 0, 1});
  const auto r = smote_balance(x, y, {});
  CHECK(r.features == x);
  CHECK(r.labels == y);
  CHECK(r.origins.empty());
}

TEST_CASE("two minority points give synthetics on the diagonal segment") {
  Matrix x(0, 2);
  LabelVector y;
  x.append_row(std::vector<double>{0, 0});
  y.values.push_back(1);
  x.append_row(std::vector<double>{1, 1});
  y.values.push_back(1);
  for (int i = 0; i < 10; ++i) {
    x.append_row(std::vector<double>{5.0 + i, -3.0});
    y.values.push_back(0);
  }
  SmoteParams p;
  p.k_neighbors = 1;
  const auto r = smote_balance(x, y, p);
  REQUIRE(r.features.rows() == 20);
  CHECK(r.labels.positive_count() == 10);
  for (std::size_t s = 12; s < 20; ++s) {
    const double t = r.features(s, 0);
    CHECK(r.features(s, 1) == t);
    CHECK(t >= 0.0);
    CHECK(t < 1.0);
  }
}

TEST_CASE("neighbour search agrees with brute force including ties") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(40);
    const std::size_t p = 1 + rng.uniform_index(3);
    Matrix pts(n, p);
    for (auto& v : pts.data()) v = static_cast<double>(rng.uniform_index(3));
    const std::size_t k = 1 + rng.uniform_index(std::min<std::size_t>(n - 1, 6));
    const auto nn = nearest_neighbors(pts, k);
    for (std::size_t r = 0; r < n; ++r) CHECK(nn[r] == brute_knn(pts, r, k));
  }
}

TEST_CASE("synthetic rows lie on minority segments with recorded provenance") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = random_instance(rng, 30 + rng.uniform_index(80), 1 + rng.uniform_index(4), 0.25);
    if (inst.y.positive_count() < 2 || inst.y.negative_count() <= inst.y.positive_count()) continue;
    SmoteParams params;
    params.k_neighbors = 1 + rng.uniform_index(5);
    params.seed = rng.next();
    const auto r = smote_balance(inst.x, inst.y, params);
    const std::size_t n = inst.x.rows();

    // originals untouched and first
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::equal(inst.x.row(i).begin(), inst.x.row(i).end(), r.features.row(i).begin()));
      CHECK(r.labels.values[i] == inst.y.values[i]);
    }
    CHECK(r.labels.positive_count() == r.labels.negative_count());
    CHECK(r.labels.negative_count() == inst.y.negative_count());
    REQUIRE(r.origins.size() == r.features.rows() - n);

    std::vector<std::size_t> minority;
    for (std::size_t i = 0; i < n; ++i) {
      if (inst.y.values[i] == 1) minority.push_back(i);
    }
    const auto pts = inst.x.select_rows(minority);
    for (std::size_t s = 0; s < r.origins.size(); ++s) {
      const auto& o = r.origins[s];
      CHECK(inst.y.values[o.base] == 1);
      CHECK(inst.y.values[o.neighbor] == 1);
      CHECK(o.u >= 0.0);
      CHECK(o.u < 1.0);
      const auto base_pos = static_cast<std::size_t>(std::find(minority.begin(), minority.end(), o.base) - minority.begin());
      const auto nbr_pos = static_cast<std::size_t>(std::find(minority.begin(), minority.end(), o.neighbor) - minority.begin());
      const auto knn = brute_knn(pts, base_pos, r.k_used);
      CHECK(std::find(knn.begin(), knn.end(), nbr_pos) != knn.end());
      const auto row = r.features.row(n + s);
      for (std::size_t c = 0; c < inst.x.cols(); ++c) {
        const double a = inst.x(o.base, c);
        const double b = inst.x(o.neighbor, c);
        CHECK(row[c] == a + o.u * (b - a));
        CHECK(row[c] >= std::min(a, b));
        CHECK(row[c] <= std::max(a, b));
      }
    }
  }
}

TEST_CASE("determinism and seed sensitivity") {
  Rng rng(4);
  auto inst = random_instance(rng, 200, 3, 0.2);
  SmoteParams p;
  p.seed = 5;
  const auto a = smote_balance(inst.x, inst.y, p);
  const auto b = smote_balance(inst.x, inst.y, p);
  CHECK(a.features == b.features);
  CHECK(a.labels == b.labels);
  p.seed = 6;
  CHECK_FALSE(smote_balance(inst.x, inst.y, p).features == a.features);
}

TEST_CASE("partial target ratio and majority-positive input") {
  Rng rng(8);
  auto inst = random_instance(rng, 301, 2, 0.8);
  SmoteParams p;
  p.target_ratio = 0.6;
  const auto r = smote_balance(inst.x, inst.y, p);
  const double pos = static_cast<double>(r.labels.positive_count());
  const double neg = static_cast<double>(r.labels.negative_count());
  CHECK(pos == inst.y.positive_count());
  CHECK(std::abs(neg - pos * p.target_ratio) <= 1.0);
  for (const auto& o : r.origins) CHECK(inst.y.values[o.base] == 0);
}

TEST_CASE("k is clamped to minority - 1") {
  Matrix x(6, 1, std::vector<double>{0, 1, 2, 10, 11, 12});
  LabelVector y({1, 1, 0, 0, 0, 0});
  SmoteParams p;
  p.k_neighbors = 5;
  const auto r = smote_balance(x, y, p);
  CHECK(r.k_clamped);
  CHECK(r.k_used == 1);
  CHECK(r.labels.positive_count() == 4);
}

TEST_CASE("errors") {
  Matrix x(4, 1, std::vector<double>{1, 2, 3, 4});
  CHECK(kind_of(x, LabelVector({1, 1, 1, 1})) == ErrorKind::SingleClass);
  CHECK(kind_of(x, LabelVector({1, 0, 0, 0})) == ErrorKind::TooFewMinority);
  CHECK(kind_of(x, LabelVector({1, 0, 0})) == ErrorKind::DimensionMismatch);
  CHECK(kind_of(x, LabelVector({1, 0, 2, 0})) == ErrorKind::NonBinary);
  SmoteParams p;
  p.k_neighbors = 0;
  CHECK(kind_of(x, LabelVector({1, 1, 0, 0}), p) == ErrorKind::BadParams);
  p = {};
  p.target_ratio = 1.5;
  CHECK(kind_of(x, LabelVector({1, 1, 0, 0}), p) == ErrorKind::BadParams);
}
