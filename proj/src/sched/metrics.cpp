#include "schedrl/sched/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "schedrl/errors.hpp"

namespace schedrl::sched {

double jain_index(std::span<const double> v) {
    check_contract(!v.empty(), "jain_index: empty input");
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double x : v) {
        check_contract(x >= 0.0, "jain_index: negative input");
        sum += x;
        sum_sq += x * x;
    }
    if (sum_sq == 0.0) {
        static bool warned = false;
        if (!warned) {
            warned = true;
            std::fprintf(stderr,
                         "[schedrl] warning: jain_index on all-zero vector, returning 1.0\n");
        }
        return 1.0;
    }
    return (sum * sum) / (static_cast<double>(v.size()) * sum_sq);
}

double sum_log_utility(std::span<const double> rates) {
    double u = 0.0;
    for (double r : rates) {
        check_contract(r > 0.0, "sum_log_utility: rate must be > 0");
        u += std::log(r);
    }
    return u;
}

double kelly_aggregate_change(std::span<const double> x, std::span<const double> x_star) {
    check_contract(x.size() == x_star.size(), "kelly_aggregate_change: length mismatch");
    double s = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        check_contract(x[n] > 0.0, "kelly_aggregate_change: x must be > 0");
        s += (x_star[n] - x[n]) / x[n];
    }
    return s;
}

ThroughputTracker::ThroughputTracker(int n_ue, int window_w, double epsilon_init)
    : t_avg_(static_cast<std::size_t>(n_ue), epsilon_init),
      window_w_(window_w),
      epsilon_init_(epsilon_init) {
    check_contract(n_ue >= 1, "ThroughputTracker: n_ue must be >= 1");
    check_contract(window_w >= 1, "ThroughputTracker: window must be >= 1");
    check_contract(epsilon_init > 0.0, "ThroughputTracker: epsilon_init must be > 0");
}

void ThroughputTracker::update(std::span<const double> delivered) {
    check_contract(delivered.size() == t_avg_.size(), "ThroughputTracker: length mismatch");
    const double keep = (window_w_ - 1.0) / window_w_;
    const double gain = 1.0 / window_w_;
    for (std::size_t n = 0; n < t_avg_.size(); ++n) {
        check_contract(delivered[n] >= 0.0, "ThroughputTracker: negative delivered bits");
        t_avg_[n] = keep * t_avg_[n] + gain * delivered[n];
    }
}

WindowedMetrics::WindowedMetrics(int n_ue, int window_len)
    : n_ue_(n_ue),
      window_len_(window_len),
      ring_(static_cast<std::size_t>(n_ue) * window_len, 0.0),
      sums_(static_cast<std::size_t>(n_ue), 0.0),
      v_avg_(static_cast<std::size_t>(n_ue), 0.0) {
    check_contract(n_ue >= 1, "WindowedMetrics: n_ue must be >= 1");
    check_contract(window_len >= 1, "WindowedMetrics: window_len must be >= 1");
}

void WindowedMetrics::add(std::span<const double> delivered) {
    check_contract(static_cast<int>(delivered.size()) == n_ue_, "WindowedMetrics: length mismatch");
    const std::size_t row = static_cast<std::size_t>(count_ % window_len_) * n_ue_;
    for (int n = 0; n < n_ue_; ++n) {
        check_contract(delivered[n] >= 0.0, "WindowedMetrics: negative delivered bits");
        sums_[n] += delivered[n] - ring_[row + n];
        ring_[row + n] = delivered[n];
        // the incremental eviction can leave a 1-ulp negative residue where
        // the true sum is zero; the window holds nonnegative values only
        if (sums_[n] < 0.0) {
            sums_[n] = 0.0;
        }
    }
    ++count_;
    const double denom = static_cast<double>(std::min<long>(count_, window_len_));
    for (int n = 0; n < n_ue_; ++n) {
        v_avg_[n] = sums_[n] / denom;
    }
}

double WindowedMetrics::throughput_sum() const {
    double s = 0.0;
    for (double v : v_avg_) {
        s += v;
    }
    return s;
}

double WindowedMetrics::jfi() const {
    return jain_index(v_avg_);
}

}  // namespace schedrl::sched
