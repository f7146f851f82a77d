#pragma once

#include <span>
#include <vector>

namespace schedrl::sched {

// Jain's fairness index: (sum v)^2 / (N * sum v^2), in [1/N, 1].
// All-zero input is treated as perfectly fair (returns 1.0) and logs a warning.
double jain_index(std::span<const double> v);

// Sum of natural logs; all rates must be > 0.
double sum_log_utility(std::span<const double> rates);

// Aggregate of proportional changes, sum_n (x_star[n] - x[n]) / x[n].
// Test oracle for the proportional-fairness condition; not in the hot path.
double kelly_aggregate_change(std::span<const double> x, std::span<const double> x_star);

// Exponentially averaged per-UE throughput T_n with window W:
//   T_n(t) = (W-1)/W * T_n(t-1) + 1/W * delivered_n(t)
// Applied to every UE every TTI (delivered = 0 for unscheduled UEs), so
// T_n stays strictly positive and the PF metric I_n/T_n never divides by zero.
class ThroughputTracker {
  public:
    ThroughputTracker(int n_ue, int window_w = 100, double epsilon_init = 1.0);

    void update(std::span<const double> delivered);

    const std::vector<double>& avg() const { return t_avg_; }
    int window() const { return window_w_; }
    double epsilon_init() const { return epsilon_init_; }

  private:
    std::vector<double> t_avg_;
    int window_w_;
    double epsilon_init_;
};

// Moving-window throughput statistics: per-UE mean delivered bits V_n over
// the last window_len TTIs, their sum, and the JFI over them.
class WindowedMetrics {
  public:
    WindowedMetrics(int n_ue, int window_len = 200);

    // Advance the ring by one TTI of per-UE delivered bits.
    void add(std::span<const double> delivered);

    const std::vector<double>& per_ue_avg() const { return v_avg_; }
    double throughput_sum() const;
    double jfi() const;

    int n_ue() const { return n_ue_; }
    int window_len() const { return window_len_; }
    long count() const { return count_; }

  private:
    int n_ue_;
    int window_len_;
    long count_ = 0;
    std::vector<double> ring_;  // window_len x n_ue, row per TTI
    std::vector<double> sums_;  // per-UE running sums over the ring
    std::vector<double> v_avg_;
};

}  // namespace schedrl::sched
