#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace alphadpp {

// Process-wide worker cap (CLI --threads / ALPHADPP_THREADS land here).
inline std::atomic<int>& max_threads_slot() {
  static std::atomic<int> value{0};  // 0 = hardware concurrency
  return value;
}

inline void set_max_threads(int n) { max_threads_slot().store(n); }

inline int effective_threads(std::int64_t work_items) {
  int cap = max_threads_slot().load();
  if (cap <= 0) cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap <= 0) cap = 1;
  if (work_items < 2 * cap) return 1;
  return cap;
}

// Deterministic data-parallel loop: each index writes its own slot, so the
// result is independent of the worker count.
template <typename Fn>
void parallel_for(std::int64_t n, Fn&& fn) {
  const int workers = effective_threads(n);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::int64_t chunk = 64;
        const std::int64_t begin = next.fetch_add(chunk);
        if (begin >= n) return;
        const std::int64_t end = std::min(n, begin + chunk);
        for (std::int64_t i = begin; i < end; ++i) fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace alphadpp
