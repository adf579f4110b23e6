#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace gecx {

// Runs fn(i) for i in [0, n) on up to `jobs` threads, in contiguous chunks.
// The first exception thrown (lowest chunk) is rethrown after all threads join.
template <class Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(jobs);
  {
    std::vector<std::jthread> threads;
    const std::size_t chunk = (n + jobs - 1) / jobs;
    for (std::size_t t = 0; t < jobs; ++t) {
      threads.emplace_back([&, t] {
        try {
          for (std::size_t i = t * chunk; i < std::min(n, (t + 1) * chunk); ++i) fn(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace gecx
