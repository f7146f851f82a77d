#pragma once

namespace schedrl::reward {

struct RewardWeights {
    double alpha = 1.0;  // throughput weight
    double beta = 5.0;   // fairness weight

    void validate() const;
};

enum class Comparison { LESS, EQUAL, GREATER };

// Per-TTI inputs to the reward schemes. inst_throughput is the bits
// delivered this TTI; window_throughput and jfi are taken over the
// moving window.
struct RewardSnapshot {
    double inst_throughput = 0.0;
    double window_throughput = 0.0;
    double jfi = 0.0;
};

// alpha * (inst_throughput / tp_scale) + beta * jfi. tp_scale is the
// largest achievable instantaneous rate, so both terms live on a
// comparable [0, 1] range.
double direct_reward(const RewardSnapshot& snap, const RewardWeights& w, double tp_scale);

// EQUAL when |mine - theirs| <= rel_tol * max(|mine|, |theirs|, eps_abs),
// otherwise GREATER/LESS by sign of (mine - theirs).
Comparison compare_metrics(double mine, double theirs, double rel_tol = 0.01);

// Dual-learning lookup: the winner-take cells pay alpha (throughput) and
// beta (JFI); EQUAL falls into the "<=" columns.
double dual_reward(Comparison tp_cmp, Comparison jfi_cmp, const RewardWeights& w);

// Expert-learning lookup against the PF reference; ties pay half credit.
double expert_reward(Comparison tp_cmp, Comparison jfi_cmp, const RewardWeights& w);

}  // namespace schedrl::reward
