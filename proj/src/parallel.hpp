#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace loginf {

// Index-parallel loop over [0, n). Work items must be independent; results
// are written into caller-owned slots, so the output is identical for any
// thread count. threads == 1 runs the plain serial loop.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
#ifdef _OPENMP
  if (threads != 1) {
    if (threads > 0) {
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
      for (long long i = 0; i < static_cast<long long>(n); ++i)
        fn(static_cast<std::size_t>(i));
    } else {
#pragma omp parallel for schedule(dynamic, 16)
      for (long long i = 0; i < static_cast<long long>(n); ++i)
        fn(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)threads;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace loginf
