#include "schedrl/drl/replay.hpp"

#include "schedrl/errors.hpp"

namespace schedrl::drl {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    check_contract(capacity >= 1, "ReplayBuffer: capacity must be >= 1");
    entries_.reserve(std::min<std::size_t>(capacity, 1 << 16));
}

void ReplayBuffer::store(Transition t) {
    if (entries_.size() < capacity_) {
        entries_.push_back(std::move(t));
    } else {
        entries_[next_] = std::move(t);
    }
    next_ = (next_ + 1) % capacity_;
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t batch_size, Rng& rng) const {
    check_contract(ready(batch_size), "ReplayBuffer: sample from under-filled buffer");
    std::vector<const Transition*> batch(batch_size);
    for (std::size_t i = 0; i < batch_size; ++i) {
        batch[i] = &entries_[rng.uniform_index(entries_.size())];
    }
    return batch;
}

}  // namespace schedrl::drl
