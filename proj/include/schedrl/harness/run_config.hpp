#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schedrl/drl/agent.hpp"
#include "schedrl/env/sim_config.hpp"
#include "schedrl/reward/reward.hpp"

namespace schedrl::harness {

enum class Method { DIRECT, DUAL, EXPERT, BASELINE_ONLY };

Method parse_method(const std::string& name);
std::string method_name(Method m);

struct RunConfig {
    Method method = Method::DIRECT;
    int n_envs = 8;
    env::SimConfig sim;
    drl::Hyperparams hp;
    reward::RewardWeights weights{1.0, 5.0};
    long total_updates = 4000;
    int eval_every = 50;
    std::vector<std::uint64_t> seeds{1};
    std::string out_dir = "out";

    int window_len = 200;           // moving window for V_n / JFI
    long episode_len_ttis = 1000;   // train env reset cadence; 0 = never
    int eval_window_ttis = 2000;
    int n_eval_seeds = 5;
    int dual_phase_updates = 100;   // M: updates per TRAIN() call
    double compare_rel_tol = 0.01;  // EQUAL band for the lookup rewards
    int threads = 0;                // 0 = one per env, capped at hardware

    void validate() const;
};

// key = value lines; '#' starts a comment. Nested fields use dotted keys
// (sim.n_ue, hp.gamma, weights.alpha). Unknown keys are an error.
RunConfig parse_run_config_file(const std::string& path);

// Applies a single key=value assignment (shared with the CLI overrides).
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace schedrl::harness
