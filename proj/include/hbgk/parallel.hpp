#pragma once

#include <exception>

namespace hbgk {

/// 0 selects the deterministic single-threaded mode.
void set_thread_count(int threads);
int thread_count();

/// `omp parallel for` over [0, n) that carries the first exception thrown by
/// `body` out of the parallel region.
template <class Body>
void parallel_for(int n, Body&& body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(static)
  for (int c = 0; c < n; ++c) {
    try {
      body(c);
    } catch (...) {
#pragma omp critical(hbgk_parallel_for_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace hbgk
