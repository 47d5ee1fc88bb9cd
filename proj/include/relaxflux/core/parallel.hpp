#pragma once

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace relaxflux {

// Runs f(k) for k in [begin, end), in parallel when OpenMP is available.
// The first exception thrown by any iteration is rethrown after the loop.
template <class F>
void parallel_for(int begin, int end, F&& f) {
  std::exception_ptr error;
#pragma omp parallel for schedule(static)
  for (int k = begin; k < end; ++k) {
    try {
      f(k);
    } catch (...) {
#pragma omp critical(relaxflux_parallel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

inline void set_thread_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

inline int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace relaxflux
