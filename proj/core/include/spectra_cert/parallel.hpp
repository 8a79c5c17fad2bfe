#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spectra_cert {

/// Worker count: SPECTRA_CERT_THREADS if set and positive, else hardware concurrency.
int thread_count();

/// Calls f(i) for i in [0, count) on a pool of threads pulling indices from a
/// shared counter. The first exception thrown by any task is rethrown.
template <class F>
void parallel_for(std::size_t count, F&& f, int threads = thread_count()) {
  if (count == 0) return;
  const std::size_t workers = std::min<std::size_t>(threads < 1 ? 1 : threads, count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// Maps f over [0, count) in parallel; results keep index order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F&& f, int threads = thread_count()) {
  std::vector<T> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = f(i); }, threads);
  return out;
}

}  // namespace spectra_cert
