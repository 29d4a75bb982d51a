#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace apbez {

/// Worker count: APBEZ_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("APBEZ_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return hw;
}

/// Applies `fn` to every index in [0, n) and returns the results in index
/// order. If any call throws, the exception from the lowest failing index is
/// rethrown, so failures are reported independently of scheduling.
template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));

  auto run = [&](std::size_t i) {
    try {
      slots[i].emplace(fn(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) run(i);
      });
    for (auto& t : pool) t.join();
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace apbez
