#pragma once

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace benkit {

inline constexpr uint64_t kDefaultChunk = 8192;

inline uint64_t num_chunks(uint64_t total, uint64_t chunk_size = kDefaultChunk) {
    return (total + chunk_size - 1) / chunk_size;
}

// Runs fn(chunk_index, begin, end) over [0, total) split into fixed-size
// chunks. Chunk boundaries depend only on `total`, never on the worker
// count, so per-chunk partial results combined in chunk order give output
// that is invariant under the thread count. Floating-point reductions must
// go through per-chunk partials for that invariance to hold.
template <class Fn>
void parallel_chunks(uint64_t total, int workers, Fn&& fn, uint64_t chunk_size = kDefaultChunk) {
    if (total == 0) return;
    if (workers < 1) workers = 1;
    const long long nchunks = (long long)num_chunks(total, chunk_size);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workers)
#endif
    for (long long c = 0; c < nchunks; ++c) {
        const uint64_t begin = (uint64_t)c * chunk_size;
        const uint64_t end = std::min(begin + chunk_size, total);
        fn((uint64_t)c, begin, end);
    }
}

}  // namespace benkit
