#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace rmlab {

// Runs fn(begin, end) on disjoint index ranges across `threads` workers.
// Callers aggregate with order-independent reductions only, so results do
// not depend on the worker count.
template <typename Fn>
void parallel_ranges(std::uint64_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    fn(std::uint64_t(0), count);
    return;
  }
  std::uint64_t nt = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), count);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::uint64_t chunk = (count + nt - 1) / nt;
  for (std::uint64_t w = 0; w < nt; ++w) {
    std::uint64_t lo = w * chunk;
    std::uint64_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace rmlab
