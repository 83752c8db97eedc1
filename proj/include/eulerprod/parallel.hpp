#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace eulerprod {

/// Calls body(i) for i in [0, count). With `enabled`, indices are split into
/// contiguous blocks over hardware threads; the caller owns any reduction,
/// so results do not depend on the thread count.
template <class Body>
void parallel_for(std::size_t count, bool enabled, Body&& body) {
  const std::size_t workers =
      enabled ? std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w * block; i < std::min(count, (w + 1) * block); ++i) body(i);
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

}  // namespace eulerprod
