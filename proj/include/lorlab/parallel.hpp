#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace lorlab {

/// Worker count: LORLAB_THREADS if set, else hardware concurrency.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("LORLAB_THREADS")) {
    const long n = std::atol(env);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Runs body(i) for i in [0, count).  Results must not depend on scheduling;
/// callers key any randomness off i, never off thread identity.
template <class Body>
void parallel_for(std::size_t count, const Body& body) {
  const unsigned workers = std::min<std::size_t>(thread_budget(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

/// splitmix64: cheap, well-mixed stream for deriving per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace lorlab
