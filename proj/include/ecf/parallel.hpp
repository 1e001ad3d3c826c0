#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace ecf {

/// Worker count actually used for a request: values < 1 mean one thread.
inline int resolve_threads(int requested) {
  return requested < 1 ? 1 : requested;
}

/// Runs fn(i) for i in [begin, end) on up to `threads` workers. Work is
/// split into contiguous ranges; outputs must be written to disjoint slots
/// so the result is identical for any worker count.
template <typename Fn>
void parallel_for(std::int64_t begin, std::int64_t end, int threads, Fn&& fn) {
  const std::int64_t total = end - begin;
  if (total <= 0) return;
  const int workers = static_cast<int>(std::min<std::int64_t>(resolve_threads(threads), total));
  if (workers == 1) {
    for (std::int64_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::int64_t chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = begin + w * chunk;
    const std::int64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ecf
