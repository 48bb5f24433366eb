#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <deque>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace incmatch {

// Mutex-guarded deque of task indices. The owner pops from the back, thieves
// take from the front.
class TaskDeque {
 public:
  void push(std::size_t task) {
    std::lock_guard<std::mutex> lock(mutex_);
    tasks_.push_back(task);
  }

  std::optional<std::size_t> pop() {
    std::lock_guard<std::mutex> lock(mutex_);
    if (tasks_.empty()) return std::nullopt;
    const std::size_t t = tasks_.back();
    tasks_.pop_back();
    return t;
  }

  std::optional<std::size_t> steal() {
    std::lock_guard<std::mutex> lock(mutex_);
    if (tasks_.empty()) return std::nullopt;
    const std::size_t t = tasks_.front();
    tasks_.pop_front();
    return t;
  }

 private:
  std::mutex mutex_;
  std::deque<std::size_t> tasks_;
};

struct StealStats {
  std::size_t executed = 0;
  std::size_t stolen = 0;
};

// Runs body(worker, task) for every task in [0, task_count) on `threads`
// workers. Tasks are dealt out in contiguous blocks; a worker whose deque runs
// dry steals single tasks from the others and retires when all deques are
// empty. The first exception thrown by a body stops all workers and is
// rethrown.
template <typename Body>
std::vector<StealStats> run_work_stealing(std::size_t task_count, unsigned threads, Body&& body) {
  threads = std::max(1u, threads);
  std::vector<TaskDeque> deques(threads);
  const std::size_t block = (task_count + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t lo = std::min(task_count, w * block);
    const std::size_t hi = std::min(task_count, lo + block);
    // Pushed in reverse so the owner pops its block in ascending order.
    for (std::size_t t = hi; t > lo; --t) deques[w].push(t - 1);
  }

  std::vector<StealStats> stats(threads);
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&](unsigned self) {
    try {
      while (!failed.load(std::memory_order_relaxed)) {
        std::optional<std::size_t> task = deques[self].pop();
        if (!task) {
          for (unsigned k = 1; k < threads && !task; ++k) task = deques[(self + k) % threads].steal();
          if (!task) return;
          ++stats[self].stolen;
        }
        body(self, *task);
        ++stats[self].executed;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      failed = true;
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return stats;
}

}  // namespace incmatch
