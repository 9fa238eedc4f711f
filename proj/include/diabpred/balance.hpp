#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "diabpred/matrix.hpp"

namespace diabpred {

struct SmoteParams {
  std::size_t k_neighbors = 5;
  std::uint64_t seed = 42;
  // minority / majority count after balancing
  double target_ratio = 1.0;
};

// Where a synthetic row came from: base + u * (neighbor - base).
struct SyntheticOrigin {
  std::size_t base;
  std::size_t neighbor;
  double u;
};

struct SmoteResult {
  Matrix features;
  LabelVector labels;
  std::vector<SyntheticOrigin> origins;  // one per synthetic row, in output order
  std::size_t k_used = 0;
  bool k_clamped = false;
};

// Oversamples the minority class by interpolating between each chosen
// minority row and one of its k nearest (Euclidean, raw units) minority
// neighbours. Original rows keep their order and are followed by the
// synthetic rows. Throws SingleClass / TooFewMinority / BadParams.
SmoteResult smote_balance(const Matrix& x, const LabelVector& y, const SmoteParams& params);

// k nearest minority rows (by index into `points`' row set) for every row,
// ties broken by lower row index. Exposed for testing.
std::vector<std::vector<std::size_t>> nearest_neighbors(const Matrix& points, std::size_t k);

}  // namespace diabpred
