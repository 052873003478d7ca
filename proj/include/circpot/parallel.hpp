#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace circpot::par {

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// OpenMP-parallel loop over [0, n). Bodies must write disjoint state; static
// schedule keeps the iteration-to-thread map deterministic.
template <class F>
void parallel_for(std::size_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        body(static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

template <class F>
void serial_for(std::size_t n, F&& body) {
    for (std::size_t i = 0; i < n; ++i) body(i);
}

// max-reduction of body(i) over [0, n); safe to parallelize since max is
// order independent
template <class F>
double parallel_max(std::size_t n, F&& body) {
    double best = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : best)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        double v = body(static_cast<std::size_t>(i));
        if (v > best) best = v;
    }
#else
    for (std::size_t i = 0; i < n; ++i) {
        double v = body(i);
        if (v > best) best = v;
    }
#endif
    return best;
}

template <class F>
double serial_max(std::size_t n, F&& body) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = body(i);
        if (v > best) best = v;
    }
    return best;
}

}  // namespace circpot::par
