#pragma once

#include <cstddef>
#include <cstdint>

#include "diabpred/dataset.hpp"

namespace diabpred {

// BRFSS-shaped table with the canonical 22 columns and plausible marginals
// and dependencies (HighBP, HighChol, BMI, Age, GenHlth and low income raise
// diabetes odds). For tests, demos and timing when the survey file is absent;
// its numbers say nothing about the real survey.
DataTable synthetic_brfss(std::size_t rows, std::uint64_t seed);

}  // namespace diabpred
