#include "benkit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "benkit/parallel.hpp"

namespace benkit {
namespace {

constexpr uint64_t kPilotTag = 0x70696C74;  // stream namespace for pilot runs

uint64_t categorical_index(const std::vector<double>& weights, RngStream& rng) {
    const double u = rng.next_unit();
    double acc = 0.0;
    for (size_t k = 0; k + 1 < weights.size(); ++k) {
        acc += weights[k];
        if (u < acc) return k;
    }
    return weights.size() - 1;
}

void validate_grid(std::span<const double> xi_grid, double max_allowed, const char* who) {
    if (xi_grid.empty()) {
        throw std::invalid_argument(std::string(who) + ": empty deviation grid");
    }
    for (size_t i = 0; i < xi_grid.size(); ++i) {
        if (!(xi_grid[i] > 0.0) || !(xi_grid[i] < max_allowed)) {
            throw std::domain_error(std::string(who) + ": grid point outside (0, max)");
        }
        if (i > 0 && !(xi_grid[i] > xi_grid[i - 1])) {
            throw std::invalid_argument(std::string(who) +
                                        ": grid must be strictly increasing");
        }
    }
}

// Shared tally: per trial, bucket[k]++ where k = #grid points below the
// statistic; exceedance counts come from suffix sums. Integer counts make
// the result exact and partition-invariant.
struct TailTally {
    std::vector<uint64_t> buckets;  // size grid+1

    explicit TailTally(size_t grid_size) : buckets(grid_size + 1, 0) {}

    void add(std::span<const double> grid, double value, bool strict) {
        // strict counts exceedances value > xi_j, non-strict value >= xi_j.
        // Bucket index = #grid points the value lands beyond.
        const size_t k =
            strict ? std::lower_bound(grid.begin(), grid.end(), value) - grid.begin()
                   : std::upper_bound(grid.begin(), grid.end(), value) - grid.begin();
        buckets[k] += 1;
    }

    void merge(const TailTally& other) {
        for (size_t i = 0; i < buckets.size(); ++i) buckets[i] += other.buckets[i];
    }

    // exceedance count for grid index j: trials whose statistic lands
    // beyond xi_j, i.e. buckets j+1..end.
    std::vector<uint64_t> exceedances() const {
        std::vector<uint64_t> out(buckets.size() - 1, 0);
        uint64_t acc = 0;
        for (size_t j = buckets.size(); j-- > 1;) {
            acc += buckets[j];
            out[j - 1] = acc;
        }
        return out;
    }
};

TailCurve tally_to_curve(const TailTally& tally, std::span<const double> xi_grid,
                         uint64_t trials, std::string source) {
    TailCurve curve;
    curve.source = std::move(source);
    const auto counts = tally.exceedances();
    for (size_t j = 0; j < xi_grid.size(); ++j) {
        const double p = double(counts[j]) / double(trials);
        const double se = std::sqrt(p * (1.0 - p) / double(trials));
        curve.points.push_back({xi_grid[j], p, se});
    }
    return curve;
}

}  // namespace

DistributionSpec DistributionSpec::bernoulli_scaled(double p, BoundedRange range) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::domain_error("DistributionSpec: Bernoulli p must lie in (0, 1)");
    }
    DistributionSpec d;
    d.kind = DistKind::BernoulliScaled;
    d.range = range;
    d.p = p;
    return d;
}

DistributionSpec DistributionSpec::uniform(BoundedRange range) {
    DistributionSpec d;
    d.kind = DistKind::Uniform;
    d.range = range;
    return d;
}

DistributionSpec DistributionSpec::discrete_weighted(std::vector<double> points,
                                                     std::vector<double> weights,
                                                     BoundedRange range) {
    if (points.empty() || points.size() != weights.size()) {
        throw std::invalid_argument("DistributionSpec: points/weights size mismatch");
    }
    double total = 0.0;
    for (size_t k = 0; k < points.size(); ++k) {
        if (!(points[k] >= range.a) || !(points[k] <= range.b)) {
            throw std::domain_error("DistributionSpec: support point outside range");
        }
        if (!(weights[k] >= 0.0)) {
            throw std::domain_error("DistributionSpec: weights must be nonnegative");
        }
        total += weights[k];
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::domain_error("DistributionSpec: weights must sum to 1");
    }
    DistributionSpec d;
    d.kind = DistKind::DiscreteWeighted;
    d.range = range;
    d.points = std::move(points);
    d.weights = std::move(weights);
    return d;
}

double DistributionSpec::mean() const {
    switch (kind) {
        case DistKind::BernoulliScaled:
            return range.a + p * (range.b - range.a);
        case DistKind::Uniform:
            return 0.5 * (range.a + range.b);
        case DistKind::DiscreteWeighted: {
            double m = 0.0;
            for (size_t k = 0; k < points.size(); ++k) m += weights[k] * points[k];
            return m;
        }
    }
    return 0.0;
}

uint64_t DistributionSpec::support_size() const {
    switch (kind) {
        case DistKind::BernoulliScaled: return 2;
        case DistKind::DiscreteWeighted: return points.size();
        case DistKind::Uniform:
            throw std::domain_error("DistributionSpec: continuous support");
    }
    return 0;
}

double DistributionSpec::support_point(uint64_t k) const {
    if (kind == DistKind::BernoulliScaled) return k == 0 ? range.a : range.b;
    if (kind == DistKind::DiscreteWeighted) return points.at(k);
    throw std::domain_error("DistributionSpec: continuous support");
}

double DistributionSpec::support_weight(uint64_t k) const {
    if (kind == DistKind::BernoulliScaled) return k == 0 ? 1.0 - p : p;
    if (kind == DistKind::DiscreteWeighted) return weights.at(k);
    throw std::domain_error("DistributionSpec: continuous support");
}

double DistributionSpec::sample(RngStream& rng) const {
    switch (kind) {
        case DistKind::BernoulliScaled:
            return rng.next_bernoulli(p) ? range.b : range.a;
        case DistKind::Uniform:
            return rng.next_uniform(range.a, range.b);
        case DistKind::DiscreteWeighted:
            return points[categorical_index(weights, rng)];
    }
    return 0.0;
}

uint64_t DistributionSpec::sample_index(RngStream& rng) const {
    if (kind == DistKind::BernoulliScaled) return rng.next_bernoulli(p) ? 1 : 0;
    if (kind == DistKind::DiscreteWeighted) return categorical_index(weights, rng);
    throw std::domain_error("DistributionSpec: continuous support has no indices");
}

std::string DistributionSpec::describe() const {
    switch (kind) {
        case DistKind::BernoulliScaled: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "bernoulli_p%g", p);
            return buf;
        }
        case DistKind::Uniform:
            return "uniform";
        case DistKind::DiscreteWeighted:
            return "discrete_k" + std::to_string(points.size());
    }
    return "unknown";
}

TailCurve sum_tail_mc(const DistributionSpec& dist, uint64_t n,
                      std::span<const double> xi_grid, const McConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("sum_tail_mc: trials must be >= 1");
    validate_grid(xi_grid, double(n) * dist.range.width(), "sum_tail_mc");

    const double expected_sum = double(n) * dist.mean();
    const uint64_t nchunks = num_chunks(cfg.trials);
    std::vector<TailTally> partial(nchunks, TailTally(xi_grid.size()));

    parallel_chunks(cfg.trials, cfg.workers, [&](uint64_t c, uint64_t begin, uint64_t end) {
        TailTally& tally = partial[c];
        for (uint64_t t = begin; t < end; ++t) {
            RngStream rng(cfg.seed, t);
            double sum = 0.0;
            for (uint64_t j = 0; j < n; ++j) sum += dist.sample(rng);
            tally.add(xi_grid, std::abs(expected_sum - sum), /*strict=*/true);
        }
    });

    TailTally total(xi_grid.size());
    for (const auto& p : partial) total.merge(p);
    return tally_to_curve(total, xi_grid, cfg.trials, "empirical");
}

FiniteClass::FiniteClass(std::vector<std::vector<double>> values_, BoundedRange range_)
    : values(std::move(values_)), range(range_) {
    if (values.empty()) {
        throw std::invalid_argument("FiniteClass: needs at least one function");
    }
    const size_t k = values.front().size();
    for (const auto& row : values) {
        if (row.size() != k || k == 0) {
            throw std::invalid_argument("FiniteClass: ragged or empty rows");
        }
        for (double v : row) {
            if (!(v >= range.a) || !(v <= range.b)) {
                throw std::invalid_argument("FiniteClass: value outside range");
            }
        }
    }
}

std::vector<double> FiniteClass::expected_risks(const DistributionSpec& dist) const {
    if (!dist.has_discrete_support()) {
        throw std::domain_error(
            "FiniteClass: expected risk not exactly computable for continuous distribution");
    }
    const uint64_t K = dist.support_size();
    if (values.front().size() != K) {
        throw std::invalid_argument("FiniteClass: function table does not match support");
    }
    std::vector<double> risks(values.size(), 0.0);
    for (size_t i = 0; i < values.size(); ++i) {
        for (uint64_t k = 0; k < K; ++k) {
            risks[i] += dist.support_weight(k) * values[i][k];
        }
    }
    return risks;
}

namespace {

// Per-trial sup_f (Ef - E_N f) and sup_f |Ef - E_N f| from support counts.
struct GapStats {
    double one_sided;
    double two_sided;
};

GapStats trial_gaps(const FiniteClass& cls, const std::vector<double>& risks,
                    const DistributionSpec& dist, uint64_t n, RngStream& rng,
                    std::vector<uint64_t>& counts) {
    const uint64_t K = counts.size();
    std::fill(counts.begin(), counts.end(), 0);
    for (uint64_t j = 0; j < n; ++j) counts[dist.sample_index(rng)] += 1;
    double one = -std::numeric_limits<double>::infinity();
    double two = 0.0;
    for (size_t i = 0; i < cls.values.size(); ++i) {
        double emp = 0.0;
        for (uint64_t k = 0; k < K; ++k) {
            emp += double(counts[k]) * cls.values[i][k];
        }
        emp /= double(n);
        const double diff = risks[i] - emp;
        one = std::max(one, diff);
        two = std::max(two, std::abs(diff));
    }
    return {one, two};
}

}  // namespace

BdiffCurveResult bdiff_tail_mc(const FiniteClass& cls, const DistributionSpec& dist,
                               uint64_t n, std::span<const double> xi_grid,
                               const McConfig& cfg, uint64_t pilot_factor) {
    if (cfg.trials < 1) throw std::invalid_argument("bdiff_tail_mc: trials must be >= 1");
    if (pilot_factor < 10) pilot_factor = 10;
    validate_grid(xi_grid, dist.range.width() * 2.0, "bdiff_tail_mc");
    const auto risks = cls.expected_risks(dist);
    const uint64_t K = dist.support_size();

    // Pilot: estimate E{H} on an independent stream namespace.
    const uint64_t pilot_trials = pilot_factor * cfg.trials;
    const uint64_t pilot_seed = derive_seed(cfg.seed, kPilotTag);
    const uint64_t pchunks = num_chunks(pilot_trials);
    std::vector<double> psum(pchunks, 0.0), psumsq(pchunks, 0.0);
    parallel_chunks(pilot_trials, cfg.workers, [&](uint64_t c, uint64_t begin, uint64_t end) {
        double sum = 0.0, sumsq = 0.0;
        std::vector<uint64_t> counts(K);
        for (uint64_t t = begin; t < end; ++t) {
            RngStream rng(pilot_seed, t);
            const double h = trial_gaps(cls, risks, dist, n, rng, counts).one_sided;
            sum += h;
            sumsq += h * h;
        }
        psum[c] = sum;
        psumsq[c] = sumsq;
    });
    double sum = 0.0, sumsq = 0.0;
    for (uint64_t c = 0; c < pchunks; ++c) {
        sum += psum[c];
        sumsq += psumsq[c];
    }
    PilotEstimate pilot;
    pilot.trials = pilot_trials;
    pilot.mean = sum / double(pilot_trials);
    const double var = std::max(
        0.0, (sumsq - double(pilot_trials) * pilot.mean * pilot.mean) /
                 double(pilot_trials - 1));
    pilot.std_error = std::sqrt(var / double(pilot_trials));

    // Main run: one-sided tail of H - E{H}.
    const uint64_t nchunks = num_chunks(cfg.trials);
    std::vector<TailTally> partial(nchunks, TailTally(xi_grid.size()));
    parallel_chunks(cfg.trials, cfg.workers, [&](uint64_t c, uint64_t begin, uint64_t end) {
        TailTally& tally = partial[c];
        std::vector<uint64_t> counts(K);
        for (uint64_t t = begin; t < end; ++t) {
            RngStream rng(cfg.seed, t);
            const double h = trial_gaps(cls, risks, dist, n, rng, counts).one_sided;
            tally.add(xi_grid, h - pilot.mean, /*strict=*/false);
        }
    });
    TailTally total(xi_grid.size());
    for (const auto& p : partial) total.merge(p);
    return {tally_to_curve(total, xi_grid, cfg.trials, "empirical"), pilot};
}

TailCurve generalization_gap_mc(const FiniteClass& cls, const DistributionSpec& dist,
                                uint64_t n, std::span<const double> xi_grid,
                                const McConfig& cfg) {
    if (cfg.trials < 1) {
        throw std::invalid_argument("generalization_gap_mc: trials must be >= 1");
    }
    validate_grid(xi_grid, dist.range.width() * 2.0, "generalization_gap_mc");
    const auto risks = cls.expected_risks(dist);
    const uint64_t K = dist.support_size();

    const uint64_t nchunks = num_chunks(cfg.trials);
    std::vector<TailTally> partial(nchunks, TailTally(xi_grid.size()));
    parallel_chunks(cfg.trials, cfg.workers, [&](uint64_t c, uint64_t begin, uint64_t end) {
        TailTally& tally = partial[c];
        std::vector<uint64_t> counts(K);
        for (uint64_t t = begin; t < end; ++t) {
            RngStream rng(cfg.seed, t);
            const double g = trial_gaps(cls, risks, dist, n, rng, counts).two_sided;
            tally.add(xi_grid, g, /*strict=*/true);
        }
    });
    TailTally total(xi_grid.size());
    for (const auto& p : partial) total.merge(p);
    return tally_to_curve(total, xi_grid, cfg.trials, "empirical");
}

ValidityReport check_bound_validity(const TailCurve& empirical, const TailCurve& bound,
                                    double slack_sigmas) {
    if (empirical.points.size() != bound.points.size()) {
        throw std::invalid_argument("check_bound_validity: grid size mismatch");
    }
    ValidityReport report;
    report.slack_sigmas = slack_sigmas;
    report.pass = true;
    for (size_t j = 0; j < empirical.points.size(); ++j) {
        const auto& e = empirical.points[j];
        const auto& b = bound.points[j];
        if (std::abs(e.xi - b.xi) > 1e-12 * std::max(1.0, std::abs(e.xi))) {
            throw std::invalid_argument("check_bound_validity: grids do not match");
        }
        ValidityPoint pt;
        pt.xi = e.xi;
        pt.empirical = e.probability;
        pt.bound = b.probability;
        pt.pass = e.probability <= b.probability + slack_sigmas * e.std_error;
        pt.tightness = e.probability > 0.0
                           ? b.probability / e.probability
                           : std::numeric_limits<double>::quiet_NaN();
        report.pass = report.pass && pt.pass;
        report.points.push_back(pt);
    }
    return report;
}

}  // namespace benkit
