#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace gowers {

inline int default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// Runs fn(begin, end, chunk_index) over a fixed partition of [lo, hi) and
// returns the per-chunk results in chunk order; exact integer partials are
// then combined deterministically by the caller.
template <typename T, typename F>
std::vector<T> map_chunks(std::int64_t lo, std::int64_t hi, int threads, F fn) {
  if (threads <= 0) threads = default_threads();
  const std::int64_t total = hi - lo;
  if (total <= 0) return {};
  const int chunks = static_cast<int>(
      std::min<std::int64_t>(threads, total));
  std::vector<T> results(static_cast<std::size_t>(chunks));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(chunks));
  for (int c = 0; c < chunks; ++c) {
    std::int64_t b = lo + total * c / chunks;
    std::int64_t e = lo + total * (c + 1) / chunks;
    pool.emplace_back([&results, fn, b, e, c] { results[static_cast<std::size_t>(c)] = fn(b, e, c); });
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace gowers
