#include "schedrl/reward/reward.hpp"

#include <algorithm>
#include <cmath>

#include "schedrl/errors.hpp"

namespace schedrl::reward {

namespace {
constexpr double kAbsFloor = 1e-12;
}

void RewardWeights::validate() const {
    check_config(alpha >= 0.0 && beta >= 0.0, "RewardWeights: weights must be >= 0");
    check_config(alpha > 0.0 || beta > 0.0, "RewardWeights: alpha and beta cannot both be 0");
}

double direct_reward(const RewardSnapshot& snap, const RewardWeights& w, double tp_scale) {
    check_contract(tp_scale > 0.0, "direct_reward: tp_scale must be > 0");
    return w.alpha * (snap.inst_throughput / tp_scale) + w.beta * snap.jfi;
}

Comparison compare_metrics(double mine, double theirs, double rel_tol) {
    check_contract(rel_tol >= 0.0, "compare_metrics: rel_tol must be >= 0");
    const double band = rel_tol * std::max({std::abs(mine), std::abs(theirs), kAbsFloor});
    if (std::abs(mine - theirs) <= band) {
        return Comparison::EQUAL;
    }
    return mine > theirs ? Comparison::GREATER : Comparison::LESS;
}

double dual_reward(Comparison tp_cmp, Comparison jfi_cmp, const RewardWeights& w) {
    const bool tp_gt = tp_cmp == Comparison::GREATER;
    const bool jfi_gt = jfi_cmp == Comparison::GREATER;
    return (tp_gt ? w.alpha : 0.0) + (jfi_gt ? w.beta : 0.0);
}

double expert_reward(Comparison tp_cmp, Comparison jfi_cmp, const RewardWeights& w) {
    const auto credit = [](Comparison c) {
        switch (c) {
            case Comparison::GREATER: return 1.0;
            case Comparison::EQUAL: return 0.5;
            case Comparison::LESS: return 0.0;
        }
        return 0.0;
    };
    return credit(tp_cmp) * w.alpha + credit(jfi_cmp) * w.beta;
}

}  // namespace schedrl::reward
