#pragma once

#include <functional>

#include "limitops/window.hpp"

namespace limitops {

// Worker-count hint: the LIMITOP_THREADS environment variable when set,
// otherwise the given fallback.
int thread_hint(int fallback = 1);

// Runs body(i) for i in [0, n), split into contiguous chunks across the
// hinted workers. The body must only touch disjoint state per index.
void parallel_for(Index n, int threads, const std::function<void(Index)>& body);

}  // namespace limitops
