#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace gravbath {

/// Worker count resolution: explicit argument > GRAVBATH_THREADS env > hardware.
inline int resolve_workers(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GRAVBATH_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0,n) across `workers` threads in contiguous index
/// blocks. Callers write results into slot i of a preallocated container, so
/// the merged output is identical for any worker count.
inline void parallel_indexed(std::size_t n, int workers,
                             const std::function<void(std::size_t)>& fn) {
  workers = resolve_workers(workers);
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::vector<std::thread> threads;
  threads.reserve(w - 1);
  std::vector<std::exception_ptr> errors(w);
  auto run_block = [&](std::size_t block) {
    const std::size_t lo = n * block / w;
    const std::size_t hi = n * (block + 1) / w;
    try {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    } catch (...) {
      errors[block] = std::current_exception();
    }
  };
  for (std::size_t b = 1; b < w; ++b) threads.emplace_back(run_block, b);
  run_block(0);
  for (auto& t : threads) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace gravbath
