#include "benkit/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace benkit::reference {
namespace {

TailCurve counts_to_curve(const std::vector<uint64_t>& exceed,
                          std::span<const double> xi_grid, uint64_t trials) {
    TailCurve curve;
    curve.source = "empirical";
    for (size_t j = 0; j < xi_grid.size(); ++j) {
        const double p = double(exceed[j]) / double(trials);
        const double se = std::sqrt(p * (1.0 - p) / double(trials));
        curve.points.push_back({xi_grid[j], p, se});
    }
    return curve;
}

}  // namespace

TailCurve sum_tail_mc(const DistributionSpec& dist, uint64_t n,
                      std::span<const double> xi_grid, const McConfig& cfg) {
    const double expected_sum = double(n) * dist.mean();
    std::vector<uint64_t> exceed(xi_grid.size(), 0);
    for (uint64_t t = 0; t < cfg.trials; ++t) {
        RngStream rng(cfg.seed, t);
        double sum = 0.0;
        for (uint64_t j = 0; j < n; ++j) sum += dist.sample(rng);
        const double dev = std::abs(expected_sum - sum);
        for (size_t j = 0; j < xi_grid.size(); ++j) {
            if (dev > xi_grid[j]) exceed[j] += 1;
        }
    }
    return counts_to_curve(exceed, xi_grid, cfg.trials);
}

TailCurve generalization_gap_mc(const FiniteClass& cls, const DistributionSpec& dist,
                                uint64_t n, std::span<const double> xi_grid,
                                const McConfig& cfg) {
    const auto risks = cls.expected_risks(dist);
    const uint64_t K = dist.support_size();
    std::vector<uint64_t> exceed(xi_grid.size(), 0);
    std::vector<uint64_t> counts(K);
    for (uint64_t t = 0; t < cfg.trials; ++t) {
        RngStream rng(cfg.seed, t);
        std::fill(counts.begin(), counts.end(), 0);
        for (uint64_t j = 0; j < n; ++j) counts[dist.sample_index(rng)] += 1;
        double gap = 0.0;
        for (size_t i = 0; i < cls.values.size(); ++i) {
            double emp = 0.0;
            for (uint64_t k = 0; k < K; ++k) emp += double(counts[k]) * cls.values[i][k];
            emp /= double(n);
            gap = std::max(gap, std::abs(risks[i] - emp));
        }
        for (size_t j = 0; j < xi_grid.size(); ++j) {
            if (gap > xi_grid[j]) exceed[j] += 1;
        }
    }
    return counts_to_curve(exceed, xi_grid, cfg.trials);
}

McEstimate rademacher_mc(const EvaluationMatrix& m, uint64_t trials, uint64_t seed) {
    const uint64_t N = m.n_samples;
    const uint64_t M = m.n_functions;
    double sum = 0.0, sumsq = 0.0;
    std::vector<double> sigma(N);
    for (uint64_t t = 0; t < trials; ++t) {
        RngStream rng(seed, t);
        for (uint64_t j = 0; j < N; ++j) sigma[j] = rng.next_sign();
        double sup = -std::numeric_limits<double>::infinity();
        for (uint64_t i = 0; i < M; ++i) {
            const auto r = m.row(i);
            double s = 0.0;
            for (uint64_t j = 0; j < N; ++j) s += sigma[j] * r[j];
            sup = std::max(sup, s);
        }
        const double v = sup / double(N);
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / double(trials);
    const double var =
        std::max(0.0, (sumsq - double(trials) * mean * mean) / double(trials - 1));
    return {mean, std::sqrt(var / double(trials)), trials};
}

double rademacher_exact(const EvaluationMatrix& m) {
    const uint64_t N = m.n_samples;
    const uint64_t M = m.n_functions;
    const uint64_t total = uint64_t(1) << N;
    double sum = 0.0;
    for (uint64_t mask = 0; mask < total; ++mask) {
        double sup = -std::numeric_limits<double>::infinity();
        for (uint64_t i = 0; i < M; ++i) {
            const auto r = m.row(i);
            double s = 0.0;
            for (uint64_t j = 0; j < N; ++j) {
                s += ((mask >> j) & 1) ? -r[j] : r[j];
            }
            sup = std::max(sup, s);
        }
        sum += sup;
    }
    return sum / double(total) / double(N);
}

}  // namespace benkit::reference
