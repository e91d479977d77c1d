#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "benkit/bounds.hpp"
#include "benkit/rng.hpp"

namespace benkit {

enum class DistKind { BernoulliScaled, Uniform, DiscreteWeighted };

// A concrete sampling distribution on [a, b] with an exactly computable
// mean. BernoulliScaled(p) takes value b with probability p and a
// otherwise.
struct DistributionSpec {
    DistKind kind = DistKind::Uniform;
    BoundedRange range{0.0, 1.0};
    double p = 0.5;                  // BernoulliScaled only
    std::vector<double> points;     // DiscreteWeighted only
    std::vector<double> weights;

    static DistributionSpec bernoulli_scaled(double p, BoundedRange range);
    static DistributionSpec uniform(BoundedRange range);
    static DistributionSpec discrete_weighted(std::vector<double> points,
                                              std::vector<double> weights,
                                              BoundedRange range);

    double mean() const;  // exact
    bool has_discrete_support() const { return kind != DistKind::Uniform; }
    uint64_t support_size() const;
    double support_point(uint64_t k) const;
    double support_weight(uint64_t k) const;

    double sample(RngStream& rng) const;
    uint64_t sample_index(RngStream& rng) const;  // discrete kinds only

    std::string describe() const;
};

// Determinism contract for every stochastic operation: results are a pure
// function of (trials, seed); workers affects scheduling only.
struct McConfig {
    uint64_t trials = 100000;
    uint64_t seed = 1;
    int workers = 1;
};

struct TailPoint {
    double xi;
    double probability;
    double std_error;
};

// A grid of (deviation, probability) pairs, either empirical or from a
// bound formula; `source` carries the family tag.
struct TailCurve {
    std::vector<TailPoint> points;
    std::string source;
};

// Empirical tail of the absolute sum deviation |E{F} - F| with
// F = sum of N draws; the exact distribution mean anchors E{F}.
TailCurve sum_tail_mc(const DistributionSpec& dist, uint64_t n,
                      std::span<const double> xi_grid, const McConfig& cfg);

// A finite function class specified by its values on the support of a
// discrete distribution: values[i][k] = f_i(support point k). Expected
// risks are then exact, so validity checks see only trial noise.
struct FiniteClass {
    std::vector<std::vector<double>> values;
    BoundedRange range{0.0, 1.0};

    FiniteClass(std::vector<std::vector<double>> values_, BoundedRange range_);
    uint64_t size() const { return values.size(); }
    // exact expected risks under dist
    std::vector<double> expected_risks(const DistributionSpec& dist) const;
};

struct PilotEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    uint64_t trials = 0;
};

struct BdiffCurveResult {
    TailCurve curve;       // tail of H - E{H}, one-sided
    PilotEstimate center;  // pilot estimate of E{H}
};

// Empirical one-sided tail of H - E{H} with H = sup_f (Ef - E_N f), the
// statistic with bounded differences c = (b-a)/N. E{H} comes from an
// independent pilot run of pilot_factor * trials.
BdiffCurveResult bdiff_tail_mc(const FiniteClass& cls, const DistributionSpec& dist,
                               uint64_t n, std::span<const double> xi_grid,
                               const McConfig& cfg, uint64_t pilot_factor = 10);

// Empirical two-sided tail of sup_f |Ef - E_N f|.
TailCurve generalization_gap_mc(const FiniteClass& cls, const DistributionSpec& dist,
                                uint64_t n, std::span<const double> xi_grid,
                                const McConfig& cfg);

struct ValidityPoint {
    double xi;
    double empirical;
    double bound;
    bool pass;
    double tightness;  // bound / empirical where empirical > 0, else NaN
};

struct ValidityReport {
    std::vector<ValidityPoint> points;
    bool pass = false;
    double slack_sigmas = 0.0;
};

// Per-point verdict: empirical <= bound + slack_sigmas * empirical stderr.
// Curves must share the xi grid.
ValidityReport check_bound_validity(const TailCurve& empirical, const TailCurve& bound,
                                    double slack_sigmas);

}  // namespace benkit
