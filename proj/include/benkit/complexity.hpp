#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "benkit/bounds.hpp"
#include "benkit/rng.hpp"

namespace benkit {

// A finite function class restricted to a dataset: entry (i, j) is
// f_i(z_j). Rows are functions, columns are samples; every entry must lie
// within the declared range.
struct EvaluationMatrix {
    std::vector<double> values;  // row-major, n_functions x n_samples
    uint64_t n_functions = 0;
    uint64_t n_samples = 0;
    BoundedRange range{0.0, 1.0};

    EvaluationMatrix(std::vector<double> values_, uint64_t n_functions_,
                     uint64_t n_samples_, BoundedRange range_);
    static EvaluationMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                      BoundedRange range);
    std::span<const double> row(uint64_t i) const {
        return {values.data() + i * n_samples, n_samples};
    }
};

// Normalized empirical metric ((1/N) sum |f_i - f_j|^p)^{1/p}; pass
// normalized = false for the plain sum form.
double empirical_lp_distance(std::span<const double> row_i, std::span<const double> row_j,
                             double p, bool normalized = true);

enum class CoverMethod { Greedy, Exact };

struct CoverResult {
    uint64_t size = 0;
    CoverMethod method = CoverMethod::Greedy;
    double radius = 0.0;
    double metric_p = 0.0;
};

// Farthest-point greedy cover with centers drawn from the rows, seeded at
// row 0. Deterministic; size is an upper bound on the exact covering
// number.
CoverResult covering_number_greedy(const EvaluationMatrix& m, double radius, double p,
                                   bool normalized = true);

// Exact minimum cover size (centers restricted to rows) by branch and
// bound. Guarded to n_functions <= 22.
CoverResult covering_number_exact(const EvaluationMatrix& m, double radius, double p,
                                  bool normalized = true);

// Produces the class evaluated on a freshly drawn dataset; all randomness
// must come from the supplied stream.
using ClassSampler = std::function<EvaluationMatrix(RngStream&)>;

// Max over `draws` sampled datasets of ln(greedy cover size): a lower
// estimate of the uniform entropy number, nondecreasing in draws.
double uen_estimate(const ClassSampler& sampler, double radius, double p,
                    uint64_t draws, uint64_t seed, int workers = 1);

// Exact empirical Rademacher complexity by enumeration of all 2^N sign
// vectors (Gray-code walk). Guarded to n_samples <= 20.
double rademacher_exact(const EvaluationMatrix& m, int workers = 1);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    uint64_t trials = 0;
};

// Monte Carlo empirical Rademacher complexity over independent uniform
// sign vectors; deterministic for fixed seed, invariant to worker count.
McEstimate rademacher_mc(const EvaluationMatrix& m, uint64_t trials, uint64_t seed,
                         int workers = 1);

// Rademacher complexity with the dataset resampled trials_outer times and
// trials_inner sign draws per dataset. trials_inner below 100 is raised to
// the Monte Carlo minimum.
McEstimate rademacher_expected_mc(const ClassSampler& sampler, uint64_t trials_outer,
                                  uint64_t trials_inner, uint64_t seed, int workers = 1);

}  // namespace benkit
