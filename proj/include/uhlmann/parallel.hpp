#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace uhlmann {

/// Persistent worker pool for data-parallel loops.
///
/// parallel_for partitions [0, n) into one contiguous block per worker;
/// callers must only write through disjoint indices. The partition depends
/// only on n and the pool size, never on scheduling, so any reduction done
/// afterwards over an index-ordered buffer is bit-stable across runs.
class ThreadPool {
 public:
  explicit ThreadPool(int threads);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  int thread_count() const { return static_cast<int>(workers_.size()) + 1; }

  /// Runs block(begin, end) over a static partition of [0, n).
  void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& block);

 private:
  struct Task {
    std::size_t begin = 0;
    std::size_t end = 0;
  };

  void worker_loop(std::size_t slot);

  std::vector<std::thread> workers_;
  std::vector<Task> tasks_;
  const std::function<void(std::size_t, std::size_t)>* job_ = nullptr;
  std::size_t generation_ = 0;
  std::size_t pending_ = 0;
  bool stop_ = false;
  std::mutex mutex_;
  std::condition_variable cv_start_;
  std::condition_variable cv_done_;
};

/// Hardware thread count, at least 1.
int default_thread_count();

}  // namespace uhlmann
