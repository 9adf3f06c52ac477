// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace plmss {

/// Default worker count: PLMSS_WORKERS if set, otherwise hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("PLMSS_WORKERS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Chunk boundary of an even split of [0,n) into `workers` contiguous ranges.
inline std::int64_t chunk_begin(int worker, int workers, std::int64_t n) {
  return n * worker / workers;
}

/// Runs body(worker, begin, end) on `workers` threads over an even split of
/// [0,n). Chunk boundaries depend only on (n, workers), never on scheduling.
/// The first exception thrown by any worker is rethrown on the caller.
template <class Body>
void parallel_chunks(int workers, std::int64_t n, Body&& body) {
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (workers == 1 || n <= 1) {
    body(0, std::int64_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  std::exception_ptr error;
  std::mutex errorMutex;
  auto run = [&](int w) {
    try {
      body(w, chunk_begin(w, workers, n), chunk_begin(w + 1, workers, n));
    } catch (...) {
      std::lock_guard<std::mutex> lock(errorMutex);
      if (!error) error = std::current_exception();
    }
  };
  for (int w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace plmss
