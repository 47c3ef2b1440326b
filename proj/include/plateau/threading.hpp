#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace plateau {

inline unsigned default_thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Splits [0, n_items) into fixed-size chunks, evaluates `work(begin, end)`
// for each chunk on a pool of threads, and merges the per-chunk results in
// chunk order. Chunk boundaries do not depend on the thread count, so the
// merged result is bit-identical for any parallelism level.
template <typename Partial, typename Work, typename Merge>
void parallel_chunks(std::size_t n_items, std::size_t chunk_size, unsigned threads, Work work,
                     Merge merge) {
  if (chunk_size == 0) chunk_size = 1;
  std::size_t n_chunks = (n_items + chunk_size - 1) / chunk_size;
  if (threads <= 1 || n_chunks <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) {
      std::size_t begin = c * chunk_size;
      std::size_t end = std::min(n_items, begin + chunk_size);
      merge(work(begin, end));
    }
    return;
  }

  std::vector<Partial> partials(n_chunks);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) break;
      std::size_t begin = c * chunk_size;
      std::size_t end = std::min(n_items, begin + chunk_size);
      partials[c] = work(begin, end);
    }
  };
  std::vector<std::thread> pool;
  unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(n_chunks));
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& p : partials) merge(std::move(p));
}

}  // namespace plateau
