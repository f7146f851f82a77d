#pragma once

#include <cstddef>
#include <vector>

#include "schedrl/rng.hpp"

namespace schedrl::drl {

// Experience quadruple (S, A, R, S'). The action lives on the probability
// simplex: components >= 0, summing to 1 within 1e-6.
struct Transition {
    std::vector<double> s;
    std::vector<double> a;
    double r = 0.0;
    std::vector<double> s_next;
};

// Fixed-capacity ring, oldest evicted first; uniform sampling with
// replacement.
class ReplayBuffer {
  public:
    explicit ReplayBuffer(std::size_t capacity);

    void store(Transition t);

    bool ready(std::size_t batch_size) const { return size() >= batch_size; }

    // Caller must check ready(); sampling an under-filled buffer is a
    // contract violation.
    std::vector<const Transition*> sample(std::size_t batch_size, Rng& rng) const;

    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Transition& entry(std::size_t i) const { return entries_[i]; }

  private:
    std::size_t capacity_;
    std::size_t next_ = 0;
    std::vector<Transition> entries_;
};

}  // namespace schedrl::drl
