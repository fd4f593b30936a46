#pragma once

#include <cstddef>
#include <functional>

namespace redist {

/// Number of worker threads: hardware concurrency capped by the
/// REDIST_THREADS environment variable (min 1).
std::size_t worker_count();

/// Static-partition parallel loop over [0, n). The body must write to
/// disjoint locations per index; results are bitwise independent of the
/// worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& range_body);

template <class F>
void parallel_for_each(std::size_t n, F&& body) {
  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) body(i);
  });
}

} // namespace redist
