#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace sparseprime {

// Worker count: explicit set_thread_count() wins, then SPARSEPRIME_THREADS,
// then hardware concurrency.  Results of parallel loops must never depend on
// this value; chunking is fixed and partials are merged in chunk order.
int thread_count();
void set_thread_count(int n);  // n <= 0 restores automatic selection

// Runs fn(chunk) for chunk = 0..n_chunks-1 on the worker pool.  fn must write
// only chunk-indexed state; the caller reduces in ascending chunk order.
template <class F>
void parallel_chunks(std::int64_t n_chunks, F&& fn) {
  int workers = thread_count();
  if (workers > n_chunks) workers = static_cast<int>(n_chunks);
  if (workers <= 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::int64_t c = next.fetch_add(1);
        if (c >= n_chunks) return;
        fn(c);
      }
    });
  }
  for (auto& th : pool) th.join();
}

// Compensated accumulator; final value depends only on the add() order.
struct KahanSum {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace sparseprime
