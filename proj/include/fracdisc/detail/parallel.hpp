#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace fracdisc::detail {

/// Runs body(i) for i in [0, n), optionally across threads in contiguous
/// chunks. Callers must write results into per-index slots and reduce in
/// index order afterwards; outputs are then independent of the schedule.
/// The lowest-chunk exception, if any, is rethrown after all workers join.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  unsigned hw = std::thread::hardware_concurrency();
  int k = std::max(1, std::min<int>(threads, hw > 0 ? int(hw) : 1));
  if (k <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  k = int(std::min<std::size_t>(std::size_t(k), n));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(k);
  pool.reserve(k);
  const std::size_t chunk = (n + k - 1) / k;
  for (int w = 0; w < k; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    pool.emplace_back([lo, hi, w, &body, &errors] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace fracdisc::detail
