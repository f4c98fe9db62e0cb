#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace planarmap {

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Work is split
/// into contiguous blocks; callers write results into slot i so that the
/// outcome is independent of the worker count. The first exception thrown
/// by any task is rethrown.
template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline std::size_t default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Deterministic parallel reduction. Items are grouped into fixed chunks of
/// `chunk` consecutive indices; each chunk is folded sequentially into a
/// fresh accumulator and the chunk accumulators are merged in index order,
/// so floating-point results do not depend on the worker count.
template <class Acc, class Item, class Merge>
Acc chunked_reduce(std::size_t count, std::size_t workers, std::size_t chunk,
                   Item&& item, Merge&& merge) {
  Acc total{};
  if (count == 0) return total;
  chunk = std::max<std::size_t>(1, chunk);
  const std::size_t chunks = (count + chunk - 1) / chunk;
  const std::size_t batch = std::max<std::size_t>(1, workers) * 4;
  for (std::size_t first = 0; first < chunks; first += batch) {
    const std::size_t in_batch = std::min(batch, chunks - first);
    std::vector<Acc> accs(in_batch);
    parallel_for(in_batch, workers, [&](std::size_t j) {
      const std::size_t begin = (first + j) * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      for (std::size_t i = begin; i < end; ++i) item(accs[j], i);
    });
    for (auto& acc : accs) merge(total, acc);
  }
  return total;
}

}  // namespace planarmap
