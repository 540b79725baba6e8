#ifndef QCCD_SRC_PARALLEL_HPP
#define QCCD_SRC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <future>
#include <vector>

namespace qccd::detail {

/// Evaluates fn(i) for i in [0, count) on up to `jobs` threads; results keep index order.
template <typename Fn>
auto parallel_map(std::size_t count, unsigned jobs, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out(count);
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < count; i = next++) out[i] = fn(i);
    }));
  }
  for (auto& f : pool) f.get();
  return out;
}

}  // namespace qccd::detail

#endif  // QCCD_SRC_PARALLEL_HPP
