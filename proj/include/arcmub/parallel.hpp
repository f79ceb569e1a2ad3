#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace arcmub {

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Tasks are
/// handed out in index order; callers store per-task results by index so the
/// merged output does not depend on the schedule.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  const std::size_t width = std::min<std::size_t>(std::max(1u, workers), count);
  if (width <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(width - 1);
  for (std::size_t t = 1; t < width; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace arcmub
