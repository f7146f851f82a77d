#include "schedrl/sched/policies.hpp"

#include "schedrl/errors.hpp"

namespace schedrl::sched {

int pf_select(std::span<const double> inst_rates, std::span<const double> avg_rates) {
    check_contract(!inst_rates.empty(), "pf_select: empty input");
    check_contract(inst_rates.size() == avg_rates.size(), "pf_select: length mismatch");
    int best = 0;
    double best_metric = -1.0;
    for (std::size_t n = 0; n < inst_rates.size(); ++n) {
        check_contract(avg_rates[n] > 0.0, "pf_select: average throughput must be > 0");
        const double metric = inst_rates[n] / avg_rates[n];
        if (metric > best_metric) {
            best_metric = metric;
            best = static_cast<int>(n);
        }
    }
    return best;
}

int max_ci_select(std::span<const double> inst_rates) {
    check_contract(!inst_rates.empty(), "max_ci_select: empty input");
    int best = 0;
    for (std::size_t n = 1; n < inst_rates.size(); ++n) {
        if (inst_rates[n] > inst_rates[best]) {
            best = static_cast<int>(n);
        }
    }
    return best;
}

int round_robin_select(long tti, int n_ue) {
    check_contract(n_ue >= 1, "round_robin_select: n_ue must be >= 1");
    check_contract(tti >= 0, "round_robin_select: tti must be >= 0");
    return static_cast<int>(tti % n_ue);
}

}  // namespace schedrl::sched
