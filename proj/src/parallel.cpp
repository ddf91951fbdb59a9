#include "rotpatch/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rotpatch {

namespace {

std::atomic<int> g_max_threads{-1};

int resolve_default() {
  if (const char* env = std::getenv("ROTPATCH_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

void set_max_threads(int n) { g_max_threads.store(n > 0 ? n : -1); }

int max_threads() {
  int v = g_max_threads.load();
  if (v <= 0) {
    v = resolve_default();
    g_max_threads.store(v);
  }
  return v;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const int nthreads = std::min<std::size_t>(max_threads(), n);
  if (nthreads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace rotpatch
