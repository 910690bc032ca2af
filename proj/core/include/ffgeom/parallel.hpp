#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ffgeom {

/// Splits [0, n) into `threads` contiguous chunks and runs
/// `body(chunk, begin, end)` on each. Chunk boundaries depend only on
/// (n, threads), and callers merge per-chunk accumulators in chunk order,
/// so integer results never depend on the thread count.
template <typename Body>
void parallel_chunks(std::size_t n, unsigned threads, Body&& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  if (workers <= 1) {
    body(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t c = 0; c < workers; ++c) {
    const std::size_t begin = n * c / workers;
    const std::size_t end = n * (c + 1) / workers;
    pool.emplace_back([&, c, begin, end] {
      try {
        body(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Number of chunks `parallel_chunks` will use for (n, threads).
inline std::size_t chunk_count(std::size_t n, unsigned threads) {
  return std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
}

}  // namespace ffgeom
