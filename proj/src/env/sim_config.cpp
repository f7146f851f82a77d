#include "schedrl/env/sim_config.hpp"

#include <cmath>

#include "schedrl/errors.hpp"

namespace schedrl::env {

void SimConfig::validate() const {
    check_config(n_ue >= 2, "SimConfig: n_ue must be >= 2");
    check_config(bandwidth_hz > 0.0, "SimConfig: bandwidth must be > 0");
    check_config(n_rb >= 1, "SimConfig: n_rb must be >= 1");
    check_config(rb_bandwidth_hz > 0.0, "SimConfig: rb bandwidth must be > 0");
    check_config(tti_s > 0.0, "SimConfig: tti must be > 0");
    check_config(target_bler > 0.0 && target_bler < 1.0, "SimConfig: target_bler out of (0,1)");
    check_config(olla_step_down_db > 0.0, "SimConfig: OLLA down step must be > 0");
    check_config(std::abs(olla_step_up_db - derived_olla_step_up_db()) <= 1e-9,
                 "SimConfig: OLLA up step must equal down * bler/(1-bler)");
    check_config(olla_clamp_db > 0.0, "SimConfig: OLLA clamp must be > 0");
    check_config(bler_slope_db > 0.0, "SimConfig: BLER slope must be > 0");
    check_config(feedback_delay_ttis >= 0, "SimConfig: feedback delay must be >= 0");
    check_config(max_harq_retx >= 0, "SimConfig: max HARQ retx must be >= 0");
    check_config(avg_snr_max_db >= avg_snr_min_db, "SimConfig: bad average SNR range");
    check_config(window_w >= 1, "SimConfig: window W must be >= 1");
    check_config(epsilon_init > 0.0, "SimConfig: epsilon_init must be > 0");
    validate_mcs_table(mcs_table);
}

double SimConfig::max_rate_bits_per_tti() const {
    return mcs_table.back().spectral_efficiency * n_rb * rb_bandwidth_hz * tti_s;
}

}  // namespace schedrl::env
