#pragma once

// OpenMP work distribution with a serial reference path. Kernels write
// results into per-index slots, so both policies produce bit-identical
// output and the serial path stays usable as the reference in tests.

#include <cstddef>
#include <exception>
#include <mutex>
#include <type_traits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace et {

enum class ExecPolicy { Serial, Parallel };

// Number of threads the Parallel policy may use (1 when built without OpenMP).
int max_threads();

// Caps the OpenMP thread count; n <= 0 leaves the runtime default untouched.
void set_thread_count(int n);

// Runs body(i) for i in [0, n). Exceptions thrown by the body are captured
// and the one raised at the lowest index is rethrown after the loop, so
// error reporting does not depend on the thread schedule.
template <typename Body>
void parallel_for(std::size_t n, ExecPolicy policy, Body&& body) {
#ifdef _OPENMP
  if (policy == ExecPolicy::Parallel && n > 1) {
    std::exception_ptr first_error = nullptr;
    std::size_t first_index = n;
    std::mutex guard;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        const std::lock_guard<std::mutex> lock(guard);
        if (static_cast<std::size_t>(i) < first_index) {
          first_index = static_cast<std::size_t>(i);
          first_error = std::current_exception();
        }
      }
    }
    if (first_error) std::rethrow_exception(first_error);
    return;
  }
#endif
  (void)policy;
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace et
