#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "diabpred/error.hpp"
#include "diabpred/featsel.hpp"
#include "diabpred/rng.hpp"
#include "doctest.h"

using namespace diabpred;

namespace {

const std::vector<std::string> kSix{"f0", "f1", "f2", "f3", "f4", "f5"};

// y depends on columns 0 and 1 only; the rest are noise on varied scales.
struct Instance {
  Matrix x;
  LabelVector y;
};

Instance informative(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  Instance inst{Matrix(n, 6), LabelVector(std::vector<int>(n))};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < 6; ++c) inst.x(r, c) = (rng.uniform01() * 2 - 1) * static_cast<double>(1 + 10 * c);
    const double z = 2.0 * inst.x(r, 0) - 1.5 * inst.x(r, 1) / 11.0;
    inst.y.values[r] = rng.uniform01() < 1 / (1 + std::exp(-z)) ? 1 : 0;
  }
  return inst;
}

RfeResult rfe_for(const Instance& inst, std::size_t n_select, std::size_t step = 1) {
  RfeParams p;
  p.n_select = n_select;
  p.step = step;
  return rfe(inst.x, inst.y, p, kSix);
}

RfeResult fake_rfe(const std::vector<std::size_t>& ranks) {
  RfeResult r;
  for (std::size_t i = 0; i < ranks.size(); ++i) r.features.push_back({"f" + std::to_string(i), ranks[i] == 1, ranks[i]});
  return r;
}

}  // namespace

TEST_CASE("n_select = p keeps everything at rank 1") {
  const auto inst = informative(1, 200);
  const auto r = rfe_for(inst, 6);
  for (const auto& f : r.features) {
    CHECK(f.selected);
    CHECK(f.rank == 1);
  }
  CHECK(r.rounds.empty());
}

TEST_CASE("informative columns survive") {
  const auto inst = informative(2, 1500);
  const auto r = rfe_for(inst, 2);
  CHECK(r.features[0].selected);
  CHECK(r.features[1].selected);
  CHECK(r.features[0].name == "f0");
}

TEST_CASE("rank validity, determinism and monotone containment") {
  const auto inst = informative(3, 600);
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto r = rfe_for(inst, k);
    std::multiset<std::size_t> ranks;
    for (const auto& f : r.features) {
      ranks.insert(f.rank);
      CHECK(f.selected == (f.rank == 1));
    }
    std::multiset<std::size_t> expected;
    for (std::size_t i = 0; i < k; ++i) expected.insert(1);
    for (std::size_t i = 2; i <= 6 - k + 1; ++i) expected.insert(i);
    CHECK(ranks == expected);
    const auto again = rfe_for(inst, k);
    for (std::size_t f = 0; f < 6; ++f) CHECK(again.features[f].rank == r.features[f].rank);
  }

  const auto full = rfe_for(inst, 1);
  for (std::size_t k = 2; k <= 6; ++k) {
    const auto bigger = surviving_after(full, k);
    const auto smaller = surviving_after(full, k - 1);
    CHECK(std::includes(bigger.begin(), bigger.end(), smaller.begin(), smaller.end()));
    CHECK(bigger.size() == k);
  }
  CHECK_THROWS_AS(surviving_after(rfe_for(inst, 3), 2), Error);
}

TEST_CASE("grouped elimination shares a rank per round") {
  const auto inst = informative(4, 400);
  const auto r = rfe_for(inst, 2, 3);
  CHECK(r.rounds.size() == 2);
  CHECK(r.rounds[0].size() == 3);
  CHECK(r.rounds[1].size() == 1);
  for (auto f : r.rounds[0]) CHECK(r.features[f].rank == 3);
  for (auto f : r.rounds[1]) CHECK(r.features[f].rank == 2);
}

TEST_CASE("rfe errors") {
  const auto inst = informative(5, 100);
  CHECK_THROWS_AS(rfe_for(inst, 0), Error);
  CHECK_THROWS_AS(rfe_for(inst, 7), Error);
  CHECK_THROWS_AS(rfe_for(inst, 3, 0), Error);
  RfeParams p;
  p.n_select = 2;
  CHECK_THROWS_AS(rfe(inst.x, inst.y, p, std::vector<std::string>{"a"}), Error);
  CHECK_THROWS_AS(rfe(inst.x, LabelVector(std::vector<int>(100, 0)), p, kSix), Error);
}

TEST_CASE("descending ranks average ties") {
  CHECK(descending_ranks(std::vector<double>{3, 1, 2}) == std::vector<double>{1, 3, 2});
  CHECK(descending_ranks(std::vector<double>{5, 5, 1, 7}) == std::vector<double>{2.5, 2.5, 4, 1});
  CHECK(descending_ranks(std::vector<double>{0, 0, 0}) == std::vector<double>{2, 2, 2});
}

TEST_CASE("consensus: unanimity reproduces the shared ordering") {
  const std::vector<double> lasso{0.9, -0.5, 0.1, 0.0};
  const ImportanceVector imp{{0.4, 0.3, 0.2, 0.1}, false};
  const auto c = consensus_rank(lasso, imp, fake_rfe({1, 2, 3, 4}));
  for (std::size_t f = 0; f < 4; ++f) CHECK(c.entries[f].mean_rank == static_cast<double>(f + 1));
}

TEST_CASE("consensus: two agreeing methods outvote one") {
  // lasso and forest put f0 first, RFE puts f1 first:
  // f0 = (1 + 1 + 2) / 3 = 4/3, f1 = (2 + 2 + 1) / 3 = 5/3
  const auto c = consensus_rank(std::vector<double>{2.0, 1.0}, ImportanceVector{{0.7, 0.3}, false}, fake_rfe({2, 1}));
  CHECK(c.entries[0].mean_rank == doctest::Approx(4.0 / 3));
  CHECK(c.entries[1].mean_rank == doctest::Approx(5.0 / 3));
  CHECK(c.entries[0].rfe_rank == 2.0);
  const auto csv = format_consensus_csv(c);
  CHECK(csv.rfind("name,lasso_rank,forest_rank,rfe_rank,mean_rank\nf0,1,1,2,", 0) == 0);
}

TEST_CASE("consensus columns are permutations with averaged ties") {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = 2 + rng.uniform_index(10);
    std::vector<double> lasso(p), imp(p);
    for (auto& v : lasso) v = static_cast<double>(rng.uniform_index(3)) - 1;
    for (auto& v : imp) v = static_cast<double>(rng.uniform_index(4));
    std::vector<std::size_t> ranks(p, 1);
    const std::size_t selected = 1 + rng.uniform_index(p);
    for (std::size_t i = selected; i < p; ++i) ranks[i] = 2 + (p - 1 - i);
    const auto c = consensus_rank(lasso, ImportanceVector{imp, false}, fake_rfe(ranks));
    double s1 = 0, s2 = 0, s3 = 0;
    for (const auto& e : c.entries) {
      s1 += e.lasso_rank;
      s2 += e.forest_rank;
      s3 += e.rfe_rank;
      CHECK(e.mean_rank == doctest::Approx((e.lasso_rank + e.forest_rank + e.rfe_rank) / 3));
    }
    const double total = static_cast<double>(p * (p + 1)) / 2;
    CHECK(s1 == total);
    CHECK(s2 == total);
    CHECK(s3 == total);
  }
  CHECK_THROWS_AS(consensus_rank(std::vector<double>{1}, ImportanceVector{{1, 0}, false}, fake_rfe({1, 2})), Error);
}

TEST_CASE("rfe csv layout") {
  const auto csv = format_rfe_csv(fake_rfe({1, 3, 2}));
  CHECK(csv == "name,selected,rank\nf0,true,1\nf1,false,3\nf2,false,2\n");
}
