// Trajectory-level parallel driver. The serial loop is the reference
// implementation; the OpenMP kernel must produce identical results because
// every work item writes only its own slot and reductions happen afterwards
// in index order. bench_parallel compares the two.
#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace multirev {

template <class F>
void for_each_index_serial(std::size_t n, F&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

template <class F>
void for_each_index_openmp(std::size_t n, int threads, F&& body) {
#ifdef _OPENMP
  if (threads != 1) {
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads > 0 ? threads : omp_get_max_threads())
    for (long long i = 0; i < static_cast<long long>(n); ++i) body(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)threads;
#endif
  for_each_index_serial(n, body);
}

// threads == 1 selects the serial reference path; anything else the OpenMP kernel.
template <class F>
void for_each_index(std::size_t n, int threads, F&& body) {
  if (threads == 1) {
    for_each_index_serial(n, body);
  } else {
    for_each_index_openmp(n, threads, body);
  }
}

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace multirev
