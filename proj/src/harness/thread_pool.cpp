#include "schedrl/harness/thread_pool.hpp"

namespace schedrl::harness {

ThreadPool::ThreadPool(int n_threads) {
    if (n_threads < 2) {
        return;  // inline mode
    }
    workers_.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) {
        workers_.emplace_back(&ThreadPool::worker_loop, this);
    }
}

ThreadPool::~ThreadPool() {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        stop_ = true;
    }
    start_cv_.notify_all();
    for (auto& w : workers_) {
        w.join();
    }
}

void ThreadPool::worker_loop() {
    long seen_generation = 0;
    while (true) {
        std::unique_lock<std::mutex> lock(mutex_);
        start_cv_.wait(lock, [&] { return stop_ || generation_ != seen_generation; });
        if (stop_) {
            return;
        }
        seen_generation = generation_;
        while (next_index_ < job_size_) {
            const int idx = next_index_++;
            ++in_flight_;
            lock.unlock();
            try {
                (*job_)(idx);
            } catch (...) {
                lock.lock();
                if (!first_error_) {
                    first_error_ = std::current_exception();
                }
                lock.unlock();
            }
            lock.lock();
            --in_flight_;
        }
        done_cv_.notify_all();
    }
}

void ThreadPool::parallel_for(int n, const std::function<void(int)>& fn) {
    if (workers_.empty() || n < 2) {
        for (int i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::unique_lock<std::mutex> lock(mutex_);
    job_ = &fn;
    job_size_ = n;
    next_index_ = 0;
    first_error_ = nullptr;
    ++generation_;
    start_cv_.notify_all();
    done_cv_.wait(lock, [&] { return next_index_ >= job_size_ && in_flight_ == 0; });
    job_ = nullptr;
    if (first_error_) {
        std::exception_ptr err = first_error_;
        first_error_ = nullptr;
        lock.unlock();
        std::rethrow_exception(err);
    }
}

}  // namespace schedrl::harness
