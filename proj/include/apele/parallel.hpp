#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace apele {

/// Runs fn(i) for every i in [0, n) across worker threads; 0 means one
/// thread per hardware core. Work is split into contiguous blocks, so
/// callers that write results by index get identical output for every
/// thread count. The first exception thrown by a worker is rethrown.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)> &fn) {
  std::size_t want = threads > 0
                         ? static_cast<std::size_t>(threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  if (want <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::size_t workers = std::min(want, n);
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_lock;
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(n, begin + chunk);
    if (begin >= end)
      break;
    pool.emplace_back([begin, end, &fn, &first_error, &error_lock] {
      try {
        for (std::size_t i = begin; i < end; ++i)
          fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> hold(error_lock);
        if (!first_error)
          first_error = std::current_exception();
      }
    });
  }
  for (auto &t : pool)
    t.join();
  if (first_error)
    std::rethrow_exception(first_error);
}

} // namespace apele
