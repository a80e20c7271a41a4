#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace gqml::detail {

// Runs body(i) for i in [0, count) on up to `threads` workers, striding so
// that worker w handles i ≡ w. Callers write results into per-index slots and
// reduce afterwards, which keeps the outcome independent of the thread count.
template <class Body>
void parallel_for(std::int64_t count, int threads, Body&& body) {
  const auto workers = static_cast<int>(std::min<std::int64_t>(std::max(threads, 1), count));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::int64_t i = w; i < count; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace gqml::detail
