#include "diabpred/balance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "diabpred/error.hpp"
#include "diabpred/rng.hpp"

namespace diabpred {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    d += t * t;
  }
  return d;
}

}  // namespace

// Survey rows repeat heavily, so the search runs over distinct points and
// expands back to rows. For every distinct point the k+1 closest rows
// (itself included) are collected with ties at the boundary distance kept,
// then each row drops itself.
std::vector<std::vector<std::size_t>> nearest_neighbors(const Matrix& points, std::size_t k) {
  const std::size_t n = points.rows();
  if (k == 0 || k >= n) throw Error(ErrorKind::BadParams, "k must lie in [1, rows-1]");

  std::map<std::vector<double>, std::size_t> distinct_of;
  std::vector<std::vector<std::size_t>> members;  // ascending row indices
  std::vector<std::size_t> distinct_row(n);
  for (std::size_t r = 0; r < n; ++r) {
    auto row = points.row(r);
    auto [it, inserted] =
        distinct_of.try_emplace(std::vector<double>(row.begin(), row.end()), members.size());
    if (inserted) members.emplace_back();
    members[it->second].push_back(r);
    distinct_row[r] = it->second;
  }
  const std::size_t d = members.size();
  std::vector<std::size_t> representative(d);
  for (std::size_t q = 0; q < d; ++q) representative[q] = members[q].front();

  std::vector<std::vector<std::size_t>> candidates(d);
  std::vector<double> dist(d);
  for (std::size_t q = 0; q < d; ++q) {
    auto base = points.row(representative[q]);
    for (std::size_t o = 0; o < d; ++o) dist[o] = squared_distance(base, points.row(representative[o]));

    // Smallest radius whose ball holds at least k+1 rows.
    std::vector<std::size_t> order(d);
    for (std::size_t o = 0; o < d; ++o) order[o] = o;
    const std::size_t want = k + 1;
    // Grow a partial selection until enough rows are covered.
    std::size_t take = std::min<std::size_t>(d, want);
    double radius = 0.0;
    while (true) {
      std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take - 1),
                       order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
      std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take),
                [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
      std::size_t covered = 0;
      std::size_t i = 0;
      for (; i < take && covered < want; ++i) covered += members[order[i]].size();
      if (covered >= want) {
        radius = dist[order[i - 1]];
        break;
      }
      take = std::min(d, take * 2);
    }

    std::vector<std::pair<double, std::size_t>> rows;
    for (std::size_t o = 0; o < d; ++o) {
      if (dist[o] <= radius) {
        for (auto r : members[o]) rows.emplace_back(dist[o], r);
      }
    }
    std::sort(rows.begin(), rows.end());
    if (rows.size() > want) rows.resize(want);
    auto& out = candidates[q];
    for (const auto& [_, r] : rows) out.push_back(r);
  }

  std::vector<std::vector<std::size_t>> neighbors(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& cand = candidates[distinct_row[r]];
    auto& out = neighbors[r];
    out.reserve(k);
    for (auto c : cand) {
      if (c != r && out.size() < k) out.push_back(c);
    }
    // r fell outside the k+1 list of its own point (more than k+1 exact
    // duplicates); the first k others are then all at distance zero.
  }
  return neighbors;
}

SmoteResult smote_balance(const Matrix& x, const LabelVector& y, const SmoteParams& params) {
  if (x.rows() != y.size()) {
    throw Error(ErrorKind::DimensionMismatch, "feature rows and labels differ in length");
  }
  check_binary(y.values);
  if (params.k_neighbors < 1) throw Error(ErrorKind::BadParams, "k_neighbors must be >= 1");
  if (!(params.target_ratio > 0.0 && params.target_ratio <= 1.0)) {
    throw Error(ErrorKind::BadParams, "target_ratio must lie in (0, 1]");
  }
  const std::size_t pos = y.positive_count();
  const std::size_t neg = y.size() - pos;
  if (pos == 0 || neg == 0) throw Error(ErrorKind::SingleClass, "SMOTE needs both classes");

  const int minority_label = pos <= neg ? 1 : 0;
  const std::size_t minority = std::min(pos, neg);
  const std::size_t majority = std::max(pos, neg);
  if (minority < 2) throw Error(ErrorKind::TooFewMinority, "minority class has fewer than 2 rows");

  SmoteResult result;
  result.features = x;
  result.labels = y;
  result.k_used = std::min(params.k_neighbors, minority - 1);
  result.k_clamped = result.k_used < params.k_neighbors;

  const auto goal = static_cast<std::size_t>(
      std::llround(params.target_ratio * static_cast<double>(majority)));
  if (goal <= minority) return result;
  const std::size_t n_synthetic = goal - minority;

  std::vector<std::size_t> minority_rows;
  minority_rows.reserve(minority);
  for (std::size_t r = 0; r < y.size(); ++r) {
    if (y.values[r] == minority_label) minority_rows.push_back(r);
  }
  const Matrix points = x.select_rows(minority_rows);
  const auto neighbors = nearest_neighbors(points, result.k_used);

  Rng rng(params.seed);
  result.features.reserve_rows(x.rows() + n_synthetic);
  result.labels.values.reserve(y.size() + n_synthetic);
  result.origins.reserve(n_synthetic);
  std::vector<double> synthetic(x.cols());
  for (std::size_t s = 0; s < n_synthetic; ++s) {
    const auto base = rng.uniform_index(minority);
    const auto& nn = neighbors[base];
    const auto other = nn[rng.uniform_index(nn.size())];
    const double u = rng.uniform01();
    auto a = points.row(base);
    auto b = points.row(other);
    for (std::size_t c = 0; c < synthetic.size(); ++c) synthetic[c] = a[c] + u * (b[c] - a[c]);
    result.features.append_row(synthetic);
    result.labels.values.push_back(minority_label);
    result.origins.push_back({minority_rows[base], minority_rows[other], u});
  }
  return result;
}

}  // namespace diabpred
