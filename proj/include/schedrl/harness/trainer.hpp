#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "schedrl/drl/agent.hpp"
#include "schedrl/drl/replay.hpp"
#include "schedrl/env/environment.hpp"
#include "schedrl/harness/run_config.hpp"
#include "schedrl/harness/thread_pool.hpp"
#include "schedrl/reward/reward.hpp"
#include "schedrl/sched/metrics.hpp"

namespace schedrl::harness {

// Seed-stream tags. Everything a run touches is derived from its run seed
// through these, so adding envs or eval seeds never perturbs other streams.
inline constexpr std::uint64_t kTagAgentInit = 0x0A11;
inline constexpr std::uint64_t kTagTrainEpisode = 0x0E57;
inline constexpr std::uint64_t kTagEvalEpisode = 0x0EA1;
inline constexpr std::uint64_t kTagActionNoise = 0x4015;
inline constexpr std::uint64_t kTagReplaySampling = 0x4EB1;

// Divides each half of the observation by its per-TTI maximum, mapping the
// raw bit rates into [0,1]^2N. Requires at least one positive I_n.
env::TtiObservation normalize_state(const env::TtiObservation& raw);

// Scheduling decision given the raw (un-normalized) observation at one TTI.
using PolicyFn = std::function<int(long tti, const env::TtiObservation& obs)>;

PolicyFn pf_policy();
PolicyFn max_ci_policy();
PolicyFn round_robin_policy();
PolicyFn agent_policy(const drl::DdpgAgent& agent);

// Two simulator instances built from the same episode seed. Channel
// evolution is action-independent, so the sides see identical fading
// streams no matter who schedules what; side 0 belongs to the learner,
// side 1 to the comparison policy (PF twin, or the rival agent when
// dual training).
class MirroredEnvPair {
  public:
    MirroredEnvPair(const env::SimConfig& sim, int window_len,
                    std::uint64_t episode_seed, std::uint64_t noise_seed);

    // Advance one side by one TTI and refresh its moving window. Sides
    // must be stepped in lockstep (0 then 1 each round).
    reward::RewardSnapshot step_side(int side, int scheduled_ue);

    const env::TtiObservation& obs(int side) const;
    int pf_pick(int side) const;

    const env::Environment& environment(int side) const;
    const sched::WindowedMetrics& window(int side) const;
    Rng& noise_rng() { return noise_rng_; }

    std::uint64_t channel_fingerprint(int side) const;
    // Throws ContractViolation if the sides' fading streams ever diverge.
    void check_mirror() const;

  private:
    std::vector<env::Environment> envs_;
    std::vector<sched::WindowedMetrics> windows_;
    std::vector<env::TtiObservation> obs_;
    Rng noise_rng_;
};

struct SeedDiff {
    std::uint64_t eval_seed = 0;
    double tp_diff = 0.0;
    double jfi_diff = 0.0;
};

// One evaluation milestone: normalized (policy - PF)/PF differences,
// averaged over the held-out eval seeds. Positive means the policy beat PF.
struct EvalRecord {
    long update_count = 0;
    double tp_diff = 0.0;
    double jfi_diff = 0.0;
    std::vector<SeedDiff> per_seed;
};

struct TrainingLog {
    std::uint64_t run_seed = 0;
    std::string label;  // "direct", "expert", "dual/agent0", ...
    std::vector<EvalRecord> evals;
    std::vector<double> reward_history;  // mean ingested reward per env round
    std::vector<drl::TrainStats> stats_history;
    long updates_done = 0;
};

EvalRecord evaluate_policy_vs_pf(const PolicyFn& policy, const RunConfig& cfg,
                                 std::uint64_t run_seed, long update_count,
                                 ThreadPool& pool);
EvalRecord evaluate_vs_pf(const drl::DdpgAgent& agent, const RunConfig& cfg,
                          std::uint64_t run_seed, long update_count, ThreadPool& pool);

struct TrainOutcome {
    drl::DdpgAgent agent;
    TrainingLog log;
};

struct DualOutcome {
    drl::DdpgAgent agent_a;
    drl::DdpgAgent agent_b;
    TrainingLog log_a;
    TrainingLog log_b;
};

// Single-agent training against a PF twin. Direct mode rewards the agent's
// own throughput/fairness mix; expert mode pays the lookup-table credit for
// beating or matching the PF reference on the windowed metrics.
TrainOutcome run_direct(const RunConfig& cfg, std::uint64_t run_seed, ThreadPool& pool);
TrainOutcome run_expert(const RunConfig& cfg, std::uint64_t run_seed, ThreadPool& pool);

// Two agents on mirrored environments, trained alternately: one learns for
// dual_phase_updates while the other's parameters stay frozen, then they
// swap. Rewards pay out only for strictly beating the opponent's window.
DualOutcome run_dual(const RunConfig& cfg, std::uint64_t run_seed, ThreadPool& pool);

}  // namespace schedrl::harness
