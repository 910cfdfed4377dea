#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace mmdnov {

/// Degree of parallelism: a fixed count >= 1, or "auto" (hardware threads).
class WorkerCount {
 public:
  constexpr WorkerCount() = default;
  constexpr explicit WorkerCount(std::size_t count) : count_(count) {}

  static constexpr WorkerCount automatic() { return WorkerCount(0); }

  constexpr bool is_auto() const noexcept { return count_ == 0; }

  std::size_t resolve() const noexcept {
    if (!is_auto()) return count_;
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }

  std::string to_string() const { return is_auto() ? "auto" : std::to_string(count_); }

  friend constexpr bool operator==(WorkerCount, WorkerCount) = default;

 private:
  std::size_t count_ = 1;
};

/// Calls fn(index, worker) for every index in [0, count). Indices are handed
/// out dynamically, so callers must write results into per-index slots; the
/// worker id in [0, workers) selects per-thread scratch space. The first
/// exception thrown by any call is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i, std::size_t{0});
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto body = [&](std::size_t worker) {
    try {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i, worker);
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next.store(count);
    }
  };

  std::vector<std::jthread> threads;
  threads.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(body, w);
  body(0);
  threads.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace mmdnov
