#include "limitops/parallel.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace limitops {

int thread_hint(int fallback) {
  if (const char* env = std::getenv("LIMITOP_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return fallback < 1 ? 1 : fallback;
}

void parallel_for(Index n, int threads, const std::function<void(Index)>& body) {
  if (threads <= 1 || n < 2) {
    for (Index i = 0; i < n; ++i) body(i);
    return;
  }
  Index workers = std::min<Index>(threads, n);
  std::vector<std::thread> pool;
  for (Index t = 0; t < workers; ++t) {
    Index lo = n * t / workers, hi = n * (t + 1) / workers;
    pool.emplace_back([lo, hi, &body] {
      for (Index i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace limitops
