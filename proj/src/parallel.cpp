#include "uhlmann/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace uhlmann {

ThreadPool::ThreadPool(int threads) {
  if (threads < 1) throw std::invalid_argument("ThreadPool: need at least one thread");
  tasks_.resize(static_cast<std::size_t>(threads) - 1);
  workers_.reserve(tasks_.size());
  for (std::size_t s = 0; s < tasks_.size(); ++s)
    workers_.emplace_back([this, s] { worker_loop(s); });
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  cv_start_.notify_all();
  for (auto& w : workers_) w.join();
}

void ThreadPool::worker_loop(std::size_t slot) {
  std::size_t seen = 0;
  for (;;) {
    const std::function<void(std::size_t, std::size_t)>* job = nullptr;
    Task task;
    {
      std::unique_lock lock(mutex_);
      cv_start_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      job = job_;
      task = tasks_[slot];
    }
    if (task.begin < task.end) (*job)(task.begin, task.end);
    {
      std::lock_guard lock(mutex_);
      if (--pending_ == 0) cv_done_.notify_all();
    }
  }
}

void ThreadPool::parallel_for(std::size_t n,
                              const std::function<void(std::size_t, std::size_t)>& block) {
  const std::size_t parts = tasks_.size() + 1;
  if (n == 0) return;
  if (parts == 1 || n < 2 * parts) {
    block(0, n);
    return;
  }
  // Static partition: worker s gets [s*n/parts, (s+1)*n/parts); caller runs part 0.
  {
    std::lock_guard lock(mutex_);
    for (std::size_t s = 0; s < tasks_.size(); ++s)
      tasks_[s] = Task{(s + 1) * n / parts, (s + 2) * n / parts};
    job_ = &block;
    pending_ = tasks_.size();
    ++generation_;
  }
  cv_start_.notify_all();
  block(0, n / parts);
  std::unique_lock lock(mutex_);
  cv_done_.wait(lock, [&] { return pending_ == 0; });
}

int default_thread_count() {
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace uhlmann
