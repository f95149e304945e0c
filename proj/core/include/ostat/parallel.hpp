#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ostat {

/// 0 means "use all hardware threads".
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, count) into fixed-size blocks and evaluates them on a worker
/// pool. Each worker builds its own scratch state once via make_state().
/// Results come back indexed by block, so any reduction performed by the
/// caller in block order is independent of the thread count and schedule.
template <typename Result, typename MakeState, typename RunBlock>
std::vector<Result> run_blocks(std::size_t count, std::size_t block_size, unsigned threads,
                               MakeState make_state, RunBlock run_block) {
  block_size = std::max<std::size_t>(1, block_size);
  const std::size_t n_blocks = (count + block_size - 1) / block_size;
  std::vector<Result> results(n_blocks);
  if (n_blocks == 0) return results;

  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n_blocks));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      auto state = make_state();
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= n_blocks) break;
        const std::size_t begin = b * block_size;
        const std::size_t end = std::min(count, begin + block_size);
        results[b] = run_block(state, begin, end);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(n_blocks);
    }
  };

  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace ostat
