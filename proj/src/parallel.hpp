#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace schelling::detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Splits [0, total) into contiguous chunks and calls f(chunk, begin, end)
// for each, from up to `threads` workers. Callers keep one accumulator per
// chunk and merge them in chunk order, which keeps results independent of
// scheduling. Returns the number of chunks.
template <class F>
std::size_t parallel_chunks(std::uint64_t total, unsigned threads, F&& f) {
  threads = resolve_threads(threads);
  const std::uint64_t min_chunk = 256;
  std::uint64_t chunks = std::min<std::uint64_t>(std::uint64_t{threads} * 8, (total + min_chunk - 1) / min_chunk);
  chunks = std::max<std::uint64_t>(chunks, 1);
  const auto bounds = [&](std::uint64_t c) { return total / chunks * c + std::min(c, total % chunks); };

  if (threads == 1 || chunks == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) f(static_cast<std::size_t>(c), bounds(c), bounds(c + 1));
    return static_cast<std::size_t>(chunks);
  }

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        f(static_cast<std::size_t>(c), bounds(c), bounds(c + 1));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = chunks;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawn = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return static_cast<std::size_t>(chunks);
}

}  // namespace schelling::detail
