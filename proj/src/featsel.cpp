#include "diabpred/featsel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "diabpred/error.hpp"

namespace diabpred {

RfeResult rfe(const Matrix& x, const LabelVector& y, const RfeParams& params,
              std::span<const std::string> names) {
  const std::size_t p = x.cols();
  if (names.size() != p) throw Error(ErrorKind::FeatureMismatch, "feature name count mismatch");
  if (params.n_select < 1 || params.n_select > p) {
    throw Error(ErrorKind::BadParams, "n_select must lie in [1, p]");
  }
  if (params.step < 1) throw Error(ErrorKind::BadParams, "step must be >= 1");
  if (!y.has_both_classes()) throw Error(ErrorKind::SingleClass, "RFE needs both classes");

  LogRegParams base = params.base;
  base.standardize = true;

  RfeResult result;
  std::vector<std::size_t> alive(p);
  std::iota(alive.begin(), alive.end(), std::size_t{0});
  while (alive.size() > params.n_select) {
    const auto model = fit_logreg(x.select_cols(alive), y, base);
    std::vector<std::size_t> order(alive.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::fabs(model.fit_weights[a]) < std::fabs(model.fit_weights[b]);
    });
    const std::size_t drop = std::min(params.step, alive.size() - params.n_select);
    std::vector<std::size_t> dropped;
    for (std::size_t k = 0; k < drop; ++k) dropped.push_back(alive[order[k]]);
    std::sort(dropped.begin(), dropped.end());
    std::erase_if(alive, [&](std::size_t f) {
      return std::binary_search(dropped.begin(), dropped.end(), f);
    });
    result.rounds.push_back(std::move(dropped));
  }

  result.features.resize(p);
  for (std::size_t f = 0; f < p; ++f) result.features[f] = {names[f], false, 1};
  for (auto f : alive) result.features[f].selected = true;
  const std::size_t rounds = result.rounds.size();
  for (std::size_t r = 0; r < rounds; ++r) {
    for (auto f : result.rounds[r]) result.features[f].rank = 1 + (rounds - r);
  }
  return result;
}

std::vector<std::size_t> surviving_after(const RfeResult& result, std::size_t remaining) {
  std::vector<std::size_t> alive(result.features.size());
  std::iota(alive.begin(), alive.end(), std::size_t{0});
  for (const auto& round : result.rounds) {
    if (alive.size() <= remaining) break;
    std::erase_if(alive, [&](std::size_t f) {
      return std::find(round.begin(), round.end(), f) != round.end();
    });
  }
  if (alive.size() != remaining) {
    throw Error(ErrorKind::BadParams, "elimination trace never reaches the requested size");
  }
  return alive;
}

std::vector<double> descending_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

ConsensusRanking consensus_rank(std::span<const double> lasso_coeffs,
                                const ImportanceVector& importance, const RfeResult& rfe) {
  const std::size_t p = rfe.features.size();
  if (lasso_coeffs.size() != p || importance.values.size() != p) {
    throw Error(ErrorKind::FeatureMismatch, "selectors cover different feature lists");
  }
  std::vector<double> lasso_mag(p), rfe_key(p);
  for (std::size_t f = 0; f < p; ++f) {
    lasso_mag[f] = std::fabs(lasso_coeffs[f]);
    rfe_key[f] = -static_cast<double>(rfe.features[f].rank);
  }
  const auto lasso = descending_ranks(lasso_mag);
  const auto forest = descending_ranks(importance.values);
  const auto by_rfe = descending_ranks(rfe_key);

  ConsensusRanking out;
  out.entries.resize(p);
  for (std::size_t f = 0; f < p; ++f) {
    auto& e = out.entries[f];
    e.name = rfe.features[f].name;
    e.lasso_rank = lasso[f];
    e.forest_rank = forest[f];
    e.rfe_rank = by_rfe[f];
    e.mean_rank = (e.lasso_rank + e.forest_rank + e.rfe_rank) / 3.0;
  }
  return out;
}

std::string format_rfe_csv(const RfeResult& result) {
  std::string out = "name,selected,rank\n";
  for (const auto& f : result.features) {
    out += f.name + "," + (f.selected ? "true" : "false") + "," + std::to_string(f.rank) + "\n";
  }
  return out;
}

std::string format_consensus_csv(const ConsensusRanking& ranking) {
  std::vector<std::size_t> order(ranking.entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ranking.entries[a].mean_rank < ranking.entries[b].mean_rank;
  });
  std::string out = "name,lasso_rank,forest_rank,rfe_rank,mean_rank\n";
  char buf[128];
  for (auto i : order) {
    const auto& e = ranking.entries[i];
    std::snprintf(buf, sizeof buf, ",%g,%g,%g,%.17g\n", e.lasso_rank, e.forest_rank, e.rfe_rank,
                  e.mean_rank);
    out += e.name + buf;
  }
  return out;
}

}  // namespace diabpred
