#pragma once

#include <span>

namespace schedrl::sched {

enum class SchedulerKind { PF, MAX_CI, ROUND_ROBIN, AGENT };

// Proportional fair pick: argmax_n inst[n] / avg[n], lowest index on ties.
// All avg[n] must be > 0.
int pf_select(std::span<const double> inst_rates, std::span<const double> avg_rates);

// Max C/I pick: argmax_n inst[n], lowest index on ties.
int max_ci_select(std::span<const double> inst_rates);

// Fixed rotation: tti mod n_ue.
int round_robin_select(long tti, int n_ue);

}  // namespace schedrl::sched
