#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dbarlab {

/// Process-wide worker count used by the sampling loops. 1 means serial.
inline int& worker_threads() {
  static int threads = 1;
  return threads;
}

/// Runs body(i) for i in [0, count) over contiguous chunks. Callers write
/// results into per-index slots and reduce afterwards in index order, so the
/// outcome does not depend on the thread count.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const auto threads = static_cast<std::size_t>(std::max(1, worker_threads()));
  if (threads == 1 || count < 2 * threads) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dbarlab
