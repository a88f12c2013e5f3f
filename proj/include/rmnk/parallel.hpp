#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace rmnk {

/// Runs body(i) for every i in [0, count) on up to `threads` workers. Work is
/// handed out one index at a time; the first exception thrown is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::scoped_lock lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// Splits [0, total) into `parts` contiguous ranges of near-equal size.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> split_range(std::uint64_t total,
                                                                        std::size_t parts) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  parts = std::max<std::size_t>(1, parts);
  const std::uint64_t step = total / parts;
  const std::uint64_t extra = total % parts;
  std::uint64_t begin = 0;
  for (std::size_t p = 0; p < parts; ++p) {
    const std::uint64_t end = begin + step + (p < extra ? 1 : 0);
    if (end > begin) ranges.emplace_back(begin, end);
    begin = end;
  }
  return ranges;
}

}  // namespace rmnk
