#pragma once

#include <cstddef>
#include <cstdint>

namespace anisopd {

/// Runs body(i) for i in [0, n) on `workers` OpenMP threads with a static schedule.
/// Bodies must write only to slots owned by i; results are then independent of the
/// worker count.
template <typename Body>
void parallel_for(std::size_t n, int workers, Body&& body) {
  const auto count = static_cast<std::int64_t>(n);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    return;
  }
#pragma omp parallel for schedule(static) num_threads(workers)
  for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace anisopd
