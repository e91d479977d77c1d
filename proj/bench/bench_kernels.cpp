// Timing comparison of the chunked OpenMP kernels against the plain serial
// reference loops, with an agreement check on each pair.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "benkit/complexity.hpp"
#include "benkit/reference.hpp"
#include "benkit/simulate.hpp"

using namespace benkit;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
        .count();
}

int hardware_workers() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void report(const char* name, double serial_ms, double parallel_ms, bool agree) {
    std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n",
                name, serial_ms, parallel_ms, serial_ms / parallel_ms,
                agree ? "results agree" : "MISMATCH");
}

EvaluationMatrix random_matrix(uint64_t m, uint64_t n, uint64_t seed) {
    std::vector<double> values(m * n);
    RngStream rng(seed, 0);
    for (auto& v : values) v = rng.next_unit();
    return EvaluationMatrix(std::move(values), m, n, BoundedRange(0.0, 1.0));
}

}  // namespace

int main() {
    const int workers = hardware_workers();
    std::printf("benkit kernel benchmark (parallel workers: %d)\n\n", workers);

    {
        const auto dist = DistributionSpec::bernoulli_scaled(0.3, BoundedRange(0.0, 1.0));
        const std::vector<double> grid{2.0, 4.0, 6.0, 8.0, 10.0, 12.0};
        const McConfig serial_cfg{400000, 42, 1};
        McConfig parallel_cfg = serial_cfg;
        parallel_cfg.workers = workers;

        double t0 = now_ms();
        const TailCurve ref = reference::sum_tail_mc(dist, 100, grid, serial_cfg);
        double t1 = now_ms();
        const TailCurve par = sum_tail_mc(dist, 100, grid, parallel_cfg);
        double t2 = now_ms();
        bool agree = true;
        for (size_t j = 0; j < grid.size(); ++j) {
            agree = agree && ref.points[j].probability == par.points[j].probability;
        }
        report("sum_tail_mc (4e5 x 100)", t1 - t0, t2 - t1, agree);
    }

    {
        const auto matrix = random_matrix(16, 400, 7);
        double t0 = now_ms();
        const McEstimate ref = reference::rademacher_mc(matrix, 200000, 11);
        double t1 = now_ms();
        const McEstimate par = rademacher_mc(matrix, 200000, 11, workers);
        double t2 = now_ms();
        const bool agree = std::abs(ref.estimate - par.estimate) <= 1e-12;
        report("rademacher_mc (2e5 x 16x400)", t1 - t0, t2 - t1, agree);
    }

    {
        const auto matrix = random_matrix(12, 18, 3);
        double t0 = now_ms();
        const double ref = reference::rademacher_exact(matrix);
        double t1 = now_ms();
        const double par = rademacher_exact(matrix, workers);
        double t2 = now_ms();
        const bool agree = std::abs(ref - par) <= 1e-12;
        report("rademacher_exact (2^18)", t1 - t0, t2 - t1, agree);
    }

    return 0;
}
