#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace herm3 {

/// Splits [0, count) into at most `workers` contiguous ranges and calls
/// fn(begin, end) for each, one range per thread. The calling thread takes
/// the first range. Exceptions from workers are rethrown after joining.
template <class Fn>
void parallel_ranges(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    fn(std::size_t{0}, count);
    return;
  }
  const std::size_t base = count / workers;
  const std::size_t extra = count % workers;
  auto bounds = [&](std::size_t w) {
    const std::size_t begin = w * base + std::min(w, extra);
    return std::pair{begin, begin + base + (w < extra ? 1 : 0)};
  };

  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        const auto [b, e] = bounds(w);
        fn(b, e);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  try {
    const auto [b, e] = bounds(0);
    fn(b, e);
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (auto& t : threads) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace herm3
