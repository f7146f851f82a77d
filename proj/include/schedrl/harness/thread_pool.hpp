#pragma once

#include <condition_variable>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace schedrl::harness {

// Persistent worker pool for stepping environment pairs concurrently.
// parallel_for blocks until every index is done; with fewer than two
// workers everything runs inline on the caller.
class ThreadPool {
  public:
    explicit ThreadPool(int n_threads);
    ~ThreadPool();

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    void parallel_for(int n, const std::function<void(int)>& fn);

    int thread_count() const { return static_cast<int>(workers_.size()); }

  private:
    void worker_loop();

    std::vector<std::thread> workers_;
    std::mutex mutex_;
    std::condition_variable start_cv_;
    std::condition_variable done_cv_;
    const std::function<void(int)>* job_ = nullptr;
    int job_size_ = 0;
    int next_index_ = 0;
    int in_flight_ = 0;
    long generation_ = 0;
    bool stop_ = false;
    std::exception_ptr first_error_;
};

}  // namespace schedrl::harness
