#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace percopack {

inline unsigned resolve_workers(unsigned workers)
{
  if (workers != 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(i) for i in [begin, end) on up to `workers` threads (0 = all
/// cores). Work is handed out in small chunks from a shared counter; callers
/// write results into slots indexed by i so the outcome does not depend on
/// scheduling. The first exception thrown by fn is rethrown here.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, unsigned workers, Fn&& fn)
{
  if (end <= begin) return;
  const std::size_t n = end - begin;
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), n));
  if (threads <= 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  const std::size_t chunk = std::max<std::size_t>(1, n / (threads * 16));
  std::atomic<std::size_t> next{begin};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::atomic<bool> failed{false};
  auto body = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t lo = next.fetch_add(chunk);
      if (lo >= end) break;
      const std::size_t hi = std::min(end, lo + chunk);
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(body);
  body();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace percopack
