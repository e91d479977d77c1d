#include "benkit/complexity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "benkit/parallel.hpp"

namespace benkit {
namespace {

void validate_entries(const EvaluationMatrix& m) {
    if (m.n_functions < 1 || m.n_samples < 1) {
        throw std::invalid_argument("EvaluationMatrix: needs at least one row and column");
    }
    if (m.values.size() != m.n_functions * m.n_samples) {
        throw std::invalid_argument("EvaluationMatrix: shape does not match data");
    }
    for (double v : m.values) {
        if (!(v >= m.range.a) || !(v <= m.range.b)) {
            throw std::invalid_argument("EvaluationMatrix: entry outside declared range");
        }
    }
}

std::vector<double> pairwise_distances(const EvaluationMatrix& m, double p,
                                       bool normalized) {
    const uint64_t M = m.n_functions;
    std::vector<double> d(M * M, 0.0);
    for (uint64_t i = 0; i < M; ++i) {
        for (uint64_t j = i + 1; j < M; ++j) {
            const double v = empirical_lp_distance(m.row(i), m.row(j), p, normalized);
            d[i * M + j] = v;
            d[j * M + i] = v;
        }
    }
    return d;
}

uint64_t greedy_cover_size(const std::vector<double>& dist, uint64_t M, double radius) {
    // Farthest-point traversal: start at row 0, repeatedly add the row
    // farthest from the chosen centers until everything is within radius.
    std::vector<double> nearest(M);
    for (uint64_t i = 0; i < M; ++i) nearest[i] = dist[0 * M + i];
    uint64_t size = 1;
    while (true) {
        uint64_t far = 0;
        for (uint64_t i = 1; i < M; ++i) {
            if (nearest[i] > nearest[far]) far = i;
        }
        if (nearest[far] <= radius) break;
        ++size;
        for (uint64_t i = 0; i < M; ++i) {
            nearest[i] = std::min(nearest[i], dist[far * M + i]);
        }
    }
    return size;
}

struct ExactCoverSearch {
    const std::vector<uint32_t>& covers;  // covers[i] = rows within radius of row i
    uint32_t full;
    uint64_t best;

    void run(uint32_t covered, uint64_t depth) {
        if (covered == full) {
            best = std::min(best, depth);
            return;
        }
        if (depth + 1 >= best) return;
        const uint32_t remaining = full & ~covered;
        // Lower bound: every new center covers at most max_cover new rows.
        int max_cover = 0;
        for (size_t i = 0; i < covers.size(); ++i) {
            max_cover = std::max(max_cover, std::popcount(covers[i] & remaining));
        }
        const uint64_t lb = (std::popcount(remaining) + max_cover - 1) / max_cover;
        if (depth + lb >= best) return;
        // Branch on the lowest uncovered row; any cover must include a
        // center within radius of it.
        const int r = std::countr_zero(remaining);
        const uint32_t candidates = covers[size_t(r)];
        for (uint32_t rest = candidates; rest != 0; rest &= rest - 1) {
            const int i = std::countr_zero(rest);
            run(covered | covers[size_t(i)], depth + 1);
        }
    }
};

}  // namespace

EvaluationMatrix::EvaluationMatrix(std::vector<double> values_, uint64_t n_functions_,
                                   uint64_t n_samples_, BoundedRange range_)
    : values(std::move(values_)),
      n_functions(n_functions_),
      n_samples(n_samples_),
      range(range_) {
    validate_entries(*this);
}

EvaluationMatrix EvaluationMatrix::from_rows(const std::vector<std::vector<double>>& rows,
                                             BoundedRange range) {
    if (rows.empty()) {
        throw std::invalid_argument("EvaluationMatrix: needs at least one row");
    }
    const uint64_t n = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * n);
    for (const auto& r : rows) {
        if (r.size() != n) {
            throw std::invalid_argument("EvaluationMatrix: ragged rows");
        }
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return EvaluationMatrix(std::move(flat), rows.size(), n, range);
}

double empirical_lp_distance(std::span<const double> row_i, std::span<const double> row_j,
                             double p, bool normalized) {
    if (row_i.size() != row_j.size()) {
        throw std::invalid_argument("empirical_lp_distance: length mismatch");
    }
    if (!(p > 0.0)) {
        throw std::domain_error("empirical_lp_distance: p must be positive");
    }
    double acc = 0.0;
    for (size_t k = 0; k < row_i.size(); ++k) {
        acc += std::pow(std::abs(row_i[k] - row_j[k]), p);
    }
    if (normalized) acc /= double(row_i.size());
    return std::pow(acc, 1.0 / p);
}

CoverResult covering_number_greedy(const EvaluationMatrix& m, double radius, double p,
                                   bool normalized) {
    if (!(radius > 0.0)) {
        throw std::domain_error("covering_number_greedy: radius must be positive");
    }
    const auto dist = pairwise_distances(m, p, normalized);
    return {greedy_cover_size(dist, m.n_functions, radius), CoverMethod::Greedy, radius, p};
}

CoverResult covering_number_exact(const EvaluationMatrix& m, double radius, double p,
                                  bool normalized) {
    if (!(radius > 0.0)) {
        throw std::domain_error("covering_number_exact: radius must be positive");
    }
    const uint64_t M = m.n_functions;
    if (M > 22) {
        throw std::invalid_argument("covering_number_exact: limited to 22 functions");
    }
    const auto dist = pairwise_distances(m, p, normalized);
    std::vector<uint32_t> covers(M, 0);
    for (uint64_t i = 0; i < M; ++i) {
        for (uint64_t j = 0; j < M; ++j) {
            if (dist[i * M + j] <= radius) covers[i] |= (1u << j);
        }
    }
    ExactCoverSearch search{covers, (1u << M) - 1, greedy_cover_size(dist, M, radius)};
    search.run(0, 0);
    return {search.best, CoverMethod::Exact, radius, p};
}

double uen_estimate(const ClassSampler& sampler, double radius, double p,
                    uint64_t draws, uint64_t seed, int workers) {
    if (draws < 1) {
        throw std::invalid_argument("uen_estimate: needs at least one draw");
    }
    const uint64_t nchunks = num_chunks(draws);
    std::vector<double> partial(nchunks, 0.0);
    parallel_chunks(draws, workers, [&](uint64_t c, uint64_t begin, uint64_t end) {
        double local = 0.0;
        for (uint64_t d = begin; d < end; ++d) {
            RngStream rng(seed, d);
            const EvaluationMatrix m = sampler(rng);
            const auto cover = covering_number_greedy(m, radius, p);
            local = std::max(local, std::log(double(cover.size)));
        }
        partial[c] = local;
    });
    double result = 0.0;
    for (double v : partial) result = std::max(result, v);
    return result;
}

double rademacher_exact(const EvaluationMatrix& m, int workers) {
    const uint64_t N = m.n_samples;
    const uint64_t M = m.n_functions;
    if (N > 20) {
        throw std::invalid_argument("rademacher_exact: limited to 20 samples");
    }
    const uint64_t total = uint64_t(1) << N;
    const uint64_t nchunks = num_chunks(total);
    std::vector<double> partial(nchunks, 0.0);

    parallel_chunks(total, workers, [&](uint64_t c, uint64_t begin, uint64_t end) {
        // Sign vector for Gray code g: bit j set means sigma_j = -1.
        const uint64_t g0 = begin ^ (begin >> 1);
        std::vector<double> dots(M, 0.0);
        for (uint64_t i = 0; i < M; ++i) {
            const auto r = m.row(i);
            double s = 0.0;
            for (uint64_t j = 0; j < N; ++j) {
                s += ((g0 >> j) & 1) ? -r[j] : r[j];
            }
            dots[i] = s;
        }
        double sum = 0.0;
        for (uint64_t t = begin; t < end; ++t) {
            double sup = dots[0];
            for (uint64_t i = 1; i < M; ++i) sup = std::max(sup, dots[i]);
            sum += sup;
            if (t + 1 == end) break;
            // Gray-code step: exactly one sign flips.
            const int j = std::countr_zero(t + 1);
            const uint64_t gn = (t + 1) ^ ((t + 1) >> 1);
            const double flip = ((gn >> j) & 1) ? -2.0 : 2.0;  // new sigma minus old
            for (uint64_t i = 0; i < M; ++i) dots[i] += flip * m.row(i)[j];
        }
        partial[c] = sum;
    });

    double total_sum = 0.0;
    for (double v : partial) total_sum += v;
    return total_sum / double(total) / double(N);
}

McEstimate rademacher_mc(const EvaluationMatrix& m, uint64_t trials, uint64_t seed,
                         int workers) {
    if (trials < 100) {
        throw std::invalid_argument("rademacher_mc: needs at least 100 trials");
    }
    const uint64_t N = m.n_samples;
    const uint64_t M = m.n_functions;
    const uint64_t nchunks = num_chunks(trials);
    std::vector<double> psum(nchunks, 0.0), psumsq(nchunks, 0.0);

    parallel_chunks(trials, workers, [&](uint64_t c, uint64_t begin, uint64_t end) {
        double sum = 0.0, sumsq = 0.0;
        std::vector<double> sigma(N);
        for (uint64_t t = begin; t < end; ++t) {
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
        psum[c] = sum;
        psumsq[c] = sumsq;
    });

    double sum = 0.0, sumsq = 0.0;
    for (uint64_t c = 0; c < nchunks; ++c) {
        sum += psum[c];
        sumsq += psumsq[c];
    }
    const double mean = sum / double(trials);
    const double var =
        std::max(0.0, (sumsq - double(trials) * mean * mean) / double(trials - 1));
    return {mean, std::sqrt(var / double(trials)), trials};
}

McEstimate rademacher_expected_mc(const ClassSampler& sampler, uint64_t trials_outer,
                                  uint64_t trials_inner, uint64_t seed, int workers) {
    if (trials_outer < 1 || trials_inner < 1) {
        throw std::invalid_argument("rademacher_expected_mc: trial counts must be >= 1");
    }
    const uint64_t nchunks = num_chunks(trials_outer, 16);
    std::vector<double> psum(nchunks, 0.0), psumsq(nchunks, 0.0);
    std::vector<double> pse(nchunks, 0.0);

    parallel_chunks(
        trials_outer, workers,
        [&](uint64_t c, uint64_t begin, uint64_t end) {
            double sum = 0.0, sumsq = 0.0, se_acc = 0.0;
            for (uint64_t o = begin; o < end; ++o) {
                RngStream rng(derive_seed(seed, 0x0D47), o);
                const EvaluationMatrix m = sampler(rng);
                const McEstimate inner = rademacher_mc(
                    m, std::max<uint64_t>(trials_inner, 100), derive_seed(seed, o), 1);
                sum += inner.estimate;
                sumsq += inner.estimate * inner.estimate;
                se_acc += inner.std_error;
            }
            psum[c] = sum;
            psumsq[c] = sumsq;
            pse[c] = se_acc;
        },
        16);

    double sum = 0.0, sumsq = 0.0, se_acc = 0.0;
    for (uint64_t c = 0; c < nchunks; ++c) {
        sum += psum[c];
        sumsq += psumsq[c];
        se_acc += pse[c];
    }
    const double mean = sum / double(trials_outer);
    double se;
    if (trials_outer >= 2) {
        const double var = std::max(
            0.0, (sumsq - double(trials_outer) * mean * mean) / double(trials_outer - 1));
        se = std::sqrt(var / double(trials_outer));
    } else {
        se = se_acc;  // dataset fixed: only sign noise remains
    }
    return {mean, se, trials_outer * trials_inner};
}

}  // namespace benkit
