#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "schedrl/drl/mlp.hpp"
#include "schedrl/drl/replay.hpp"
#include "schedrl/rng.hpp"

namespace schedrl::drl {

struct Hyperparams {
    double actor_lr = 1e-4;
    double critic_lr = 1e-3;
    double gamma = 0.95;
    double tau = 0.005;
    int batch_size = 64;
    double noise_scale = 0.1;      // initial exploration magnitude
    double noise_decay = 0.999;    // applied once per update
    int updates_per_eval = 50;
    int hidden_units = 64;
    int hidden_layers = 2;
    std::size_t replay_capacity = 100000;

    void validate() const;
};

struct TrainStats {
    double critic_loss = 0.0;
    double actor_objective = 0.0;
};

// Deterministic policy gradient agent: actor maps the 2N-value state to an
// N-value metric vector on the simplex, critic scores (state, action)
// pairs. Targets track the live nets by soft updates. Action selection is
// const and may run concurrently from many environment drivers; train_step
// is the single writer.
class DdpgAgent {
  public:
    DdpgAgent(int n_ue, const Hyperparams& hp, std::uint64_t init_seed);

    // a = actor(s); with explore, zero-mean noise is added to the actor's
    // pre-output logits and the result renormalized onto the simplex.
    std::vector<double> select_action(std::span<const double> state, bool explore,
                                      Rng& rng) const;

    // One critic regression + one actor ascent step on the batch, then a
    // soft update of both targets. Throws NumericsError if anything goes
    // non-finite.
    TrainStats train_step(std::span<const Transition* const> batch);

    long update_count() const { return update_count_; }
    double noise_scale() const { return noise_scale_; }
    int n_ue() const { return n_ue_; }
    int state_size() const { return 2 * n_ue_; }
    const Hyperparams& hyperparams() const { return hp_; }

    const Mlp& actor() const { return actor_; }
    const Mlp& critic() const { return critic_; }
    const Mlp& target_actor() const { return target_actor_; }
    const Mlp& target_critic() const { return target_critic_; }
    Mlp& actor_mut() { return actor_; }
    Mlp& critic_mut() { return critic_; }

    // FNV-1a over all parameter bytes of the four nets; used by the
    // freeze/isolation checks.
    std::uint64_t param_hash() const;

    void save(const std::string& path) const;
    static DdpgAgent load(const std::string& path);

  private:
    DdpgAgent(int n_ue, const Hyperparams& hp);  // uninitialized nets, for load()

    int n_ue_;
    Hyperparams hp_;
    Mlp actor_, critic_, target_actor_, target_critic_;
    AdamOptimizer actor_opt_, critic_opt_;
    long update_count_ = 0;
    double noise_scale_;
};

// Scheduled UE for a metric vector: argmax, lowest index on ties.
int argmax_action(std::span<const double> action);

}  // namespace schedrl::drl
