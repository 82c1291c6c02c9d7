#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qconfine/numerics/error.hpp"

namespace qconfine::app {

/// Worker count from the flag, else QCONFINE_JOBS, else 1.
inline int resolve_jobs(std::optional<int> flag) {
  if (flag) {
    require(*flag >= 1, ErrorCode::invalid_argument, "--jobs must be at least 1");
    return *flag;
  }
  if (const char* env = std::getenv("QCONFINE_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    require(end != env && *end == '\0' && v >= 1, ErrorCode::invalid_argument,
            std::string("QCONFINE_JOBS must be a positive integer, got '") + env + "'");
    return static_cast<int>(v);
  }
  return 1;
}

/// Applies f to every item on a pool of `jobs` threads and returns the
/// results in input order. The first exception in input order is rethrown
/// after all workers finish.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, F f, int jobs) {
  using R = decltype(f(items.front()));
  std::vector<std::optional<R>> slots(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
      try {
        slots[i].emplace(f(items[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(items.size())));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  std::vector<R> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace qconfine::app
