#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace bfvar {

/// Runs fn(begin, end) over an even partition of [0, count) across
/// `threads` workers. Callers are responsible for making the work
/// order-independent; results must be written to disjoint slots so that
/// the outcome does not depend on the thread count. The first exception
/// thrown by any worker is rethrown on the calling thread.
inline void parallel_for(
    std::int64_t count, int threads,
    const std::function<void(std::int64_t, std::int64_t)>& fn) {
  if (count <= 0) return;
  if (threads < 1) threads = 1;
  const std::int64_t workers =
      std::min<std::int64_t>(static_cast<std::int64_t>(threads), count);
  if (workers == 1) {
    fn(0, count);
    return;
  }
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto guarded = [&](std::int64_t begin, std::int64_t end) {
    try {
      fn(begin, end);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!failed.exchange(true)) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  const std::int64_t chunk = (count + workers - 1) / workers;
  for (std::int64_t w = 1; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(guarded, begin, end);
  }
  guarded(0, std::min(count, chunk));
  for (auto& t : pool) t.join();
  if (failed.load()) std::rethrow_exception(error);
}

}  // namespace bfvar
