#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace dispgibbs {

/// Worker count: hardware concurrency, capped by DISPGIBBS_THREADS if set.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DISPGIBBS_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
    }
  }
  return n;
}

/// out[i] = fn(in[i]); results are stored in input order. The first exception
/// thrown by any call is rethrown after all workers finish.
template <class T, class F>
auto parallel_map(const std::vector<T>& in, F&& fn) -> std::vector<decltype(fn(in.front()))> {
  using R = decltype(fn(in.front()));
  std::vector<R> out(in.size());
  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(in.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = fn(in[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= in.size()) return;
      try {
        out[i] = fn(in[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        next.store(in.size());
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace dispgibbs
