#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace ffcm {

// Runs fn(i) for i in [0, n) on up to `jobs` threads.  Work items must be
// independent; exact-arithmetic reductions downstream are order-independent,
// so results are identical for every job count.
inline void parallel_for(std::uint64_t n, int jobs, const std::function<void(std::uint64_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  int width = std::min<std::uint64_t>(jobs, n);
  std::exception_ptr error;
  std::mutex error_mu;
  for (int j = 0; j < width; ++j)
    pool.emplace_back([&] {
      std::uint64_t i;
      while ((i = next.fetch_add(1)) < n) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ffcm
