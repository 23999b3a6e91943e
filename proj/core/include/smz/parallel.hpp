#ifndef SMZ_PARALLEL_HPP
#define SMZ_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace smz {

// Worker count: SMZ_THREADS if set and positive, else hardware concurrency.
int thread_count();

// Runs f(0..n-1) on the worker pool. Work items are independent; the first
// exception thrown by any item is rethrown after all workers have joined.
// Calls made from inside a worker run sequentially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

// Results land in index order, so reductions over the returned vector are
// deterministic regardless of scheduling.
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, F&& f) {
  std::vector<R> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

}  // namespace smz

#endif
