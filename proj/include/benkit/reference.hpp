#pragma once

#include <cstdint>
#include <span>

#include "benkit/complexity.hpp"
#include "benkit/simulate.hpp"

// Plain single-loop implementations of the parallel kernels. Kept as the
// correctness baseline for the chunked OpenMP versions and timed against
// them by the benchmark target. Integer-count outputs must match the
// parallel kernels bit for bit; floating-point means agree to rounding.
namespace benkit::reference {

TailCurve sum_tail_mc(const DistributionSpec& dist, uint64_t n,
                      std::span<const double> xi_grid, const McConfig& cfg);

TailCurve generalization_gap_mc(const FiniteClass& cls, const DistributionSpec& dist,
                                uint64_t n, std::span<const double> xi_grid,
                                const McConfig& cfg);

McEstimate rademacher_mc(const EvaluationMatrix& m, uint64_t trials, uint64_t seed);

double rademacher_exact(const EvaluationMatrix& m);

}  // namespace benkit::reference
