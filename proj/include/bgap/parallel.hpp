#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace bgap {

struct Exec {
  unsigned threads = 0;  // 0: hardware concurrency

  unsigned resolved() const {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
  }
};

/// Splits [0, count) into contiguous chunks, runs body(lo, hi, acc) on each
/// with a fresh Acc, and merges the partials in chunk order. Results are
/// thread-count independent whenever Acc::merge is associative and exact.
template <typename Acc, typename Body>
Acc parallel_reduce(std::int64_t count, const Exec& exec, Body body) {
  Acc total{};
  if (count <= 0) return total;
  const auto workers = static_cast<std::int64_t>(
      std::min<std::int64_t>(exec.resolved(), std::max<std::int64_t>(1, count / 64)));
  if (workers <= 1) {
    body(std::int64_t{0}, count, total);
    return total;
  }
  std::vector<Acc> partial(static_cast<std::size_t>(workers));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (std::int64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::int64_t lo = count * w / workers;
      const std::int64_t hi = count * (w + 1) / workers;
      try {
        body(lo, hi, partial[static_cast<std::size_t>(w)]);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& p : partial) total.merge(p);
  return total;
}

}  // namespace bgap
