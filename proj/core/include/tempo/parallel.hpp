#ifndef TEMPO_PARALLEL_HPP_
#define TEMPO_PARALLEL_HPP_

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace tempo {

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/*
 * Run body(begin, end, worker_index) over [0, n) split into fixed blocks
 * claimed from an atomic counter. Each item must be processed independently
 * and write only to its own output slots, so results never depend on the
 * thread count. The first exception thrown by any worker is rethrown.
 */
inline void parallel_blocks(std::uint64_t n, unsigned threads,
                            const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& body,
                            std::uint64_t block = 64) {
  threads = resolve_threads(threads);
  if (n == 0) return;
  if (threads == 1 || n <= block) {
    body(0, n, 0);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&](unsigned w) {
    try {
      while (true) {
        const std::uint64_t begin = next.fetch_add(block);
        if (begin >= n) break;
        const std::uint64_t end = begin + block < n ? begin + block : n;
        body(begin, end, w);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace tempo

#endif /* TEMPO_PARALLEL_HPP_ */
