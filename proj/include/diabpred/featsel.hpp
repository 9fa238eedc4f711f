#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "diabpred/logistic.hpp"
#include "diabpred/matrix.hpp"
#include "diabpred/tree.hpp"

namespace diabpred {

struct RfeParams {
  std::size_t n_select = 10;
  std::size_t step = 1;
  LogRegParams base;
};

struct RfeFeature {
  std::string name;
  bool selected = false;
  std::size_t rank = 1;
};

struct RfeResult {
  std::vector<RfeFeature> features;            // input column order
  std::vector<std::vector<std::size_t>> rounds;  // features dropped per round, first round first
};

// Recursive feature elimination over the logistic model: refit on the
// surviving z-scored columns, drop the `step` smallest |coefficient| (ties:
// lower column index first) until n_select remain. Survivors get rank 1; the
// last round gets rank 2, the one before it rank 3, and so on.
RfeResult rfe(const Matrix& x, const LabelVector& y, const RfeParams& params,
              std::span<const std::string> names);

// Columns still alive once `remaining` features are left in the trace.
std::vector<std::size_t> surviving_after(const RfeResult& result, std::size_t remaining);

struct ConsensusEntry {
  std::string name;
  double lasso_rank = 0;
  double forest_rank = 0;
  double rfe_rank = 0;
  double mean_rank = 0;
};

struct ConsensusRanking {
  std::vector<ConsensusEntry> entries;  // input column order
};

// Rank 1 = largest value; tied values share the average of their ranks.
std::vector<double> descending_ranks(std::span<const double> values);

// Lasso by descending |coefficient|, forest by descending importance, RFE by
// ascending elimination rank; all three are turned into 1..p ranks with
// averaged ties and combined by arithmetic mean. Throws FeatureMismatch.
ConsensusRanking consensus_rank(std::span<const double> lasso_coeffs,
                                const ImportanceVector& importance, const RfeResult& rfe);

std::string format_rfe_csv(const RfeResult& result);
// Rows sorted by mean rank (stable on column order).
std::string format_consensus_csv(const ConsensusRanking& ranking);

}  // namespace diabpred
