// Deterministic fan-out of independent work items and per-item RNG streams.

#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace su2ent {

/// Environment variable selecting the number of worker threads.
inline constexpr const char* kWorkersEnv = "SU2ENT_WORKERS";

/// Value of SU2ENT_WORKERS if set to a positive integer, else the hardware
/// concurrency (at least 1). Throws DomainError on a malformed value.
int worker_count();

/// Generator for work item `index` of a run seeded with `seed`; streams do
/// not depend on which thread runs the item.
std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t index);

/// Calls fn(i) for i in [0, n) on up to `workers` threads. Each fn(i) must
/// write only its own result slot. The first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, int workers = worker_count()) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> guard(failure_lock);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::vector<std::thread> pool;
  pool.reserve(count - 1);
  for (std::size_t t = 1; t < count; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace su2ent
