#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cornerlab {

// Runs task(i) for i in [0, count) on up to `workers` threads. The first exception is rethrown
// after all workers have stopped.
template <class Task>
void run_parallel(std::size_t count, int workers, Task&& task) {
  const std::size_t pool = std::clamp<std::size_t>(workers > 0 ? workers : 1, 1, std::max<std::size_t>(count, 1));
  if (pool == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex guard;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (!first) first = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> threads;
  for (std::size_t t = 0; t < pool; ++t) threads.emplace_back(worker);
  threads.clear();
  if (first) std::rethrow_exception(first);
}

// Logical cores, at least one.
inline int default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace cornerlab
