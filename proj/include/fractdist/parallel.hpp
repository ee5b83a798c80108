#ifndef FRACTDIST_PARALLEL_HPP
#define FRACTDIST_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

namespace fractdist {

inline unsigned worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs body(i) for i in [0, n). Each index writes only its own outputs, so
// the result is identical to the serial loop regardless of thread count;
// any reduction is done by the caller in index order.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  const unsigned workers = worker_count();
  if (n < 2 || workers < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const unsigned nt = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&, t]() {
      const std::size_t lo = n * t / nt;
      const std::size_t hi = n * (t + 1) / nt;
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace fractdist

#endif
