#pragma once
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ruledgeo {

// Runs fn(i) for i in [0, n) on `threads` workers. Callers write results by
// index, so output ordering does not depend on the worker count.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (threads > n) threads = static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline unsigned thread_count_from_env(const char* env_name) {
  if (const char* s = std::getenv(env_name)) {
    const long n = std::strtol(s, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return 1;
}

}  // namespace ruledgeo
