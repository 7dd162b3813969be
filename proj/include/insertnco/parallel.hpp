#pragma once

#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace insertnco {

// INSERT_NCO_THREADS overrides the requested job count; requested <= 0 falls
// back to the hardware thread count.
inline int resolve_jobs(int requested) {
  if (const char* env = std::getenv("INSERT_NCO_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Static round-robin split: worker w handles items w, w+jobs, w+2*jobs, ...
// in that order, which keeps per-worker accumulation deterministic for a
// fixed job count.
inline void parallel_for_workers(int jobs, long count,
                                 const std::function<void(int, long)>& fn) {
  if (jobs <= 1) {
    for (long i = 0; i < count; ++i) fn(0, i);
    return;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    threads.emplace_back([&, w]() {
      try {
        for (long i = w; i < count; i += jobs) fn(w, i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace insertnco
