#include "redist/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace redist {

std::size_t worker_count() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("REDIST_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<std::size_t>(hw, static_cast<std::size_t>(cap));
  }
  return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& range_body) {
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(1, n));
  if (workers <= 1 || n < 32) {
    range_body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t lo = std::min(n, w * chunk);
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo < hi) pool.emplace_back([&, lo, hi] { range_body(lo, hi); });
  }
  range_body(0, std::min(n, chunk));
  for (auto& t : pool) t.join();
}

} // namespace redist
