#pragma once

#include <cstdint>
#include <vector>

#include "schedrl/env/mcs.hpp"

namespace schedrl::env {

// Single-cell downlink scenario parameters. Defaults follow the 10 MHz /
// 5 UE / full-buffer setup with one RBG holding all 50 resource blocks.
struct SimConfig {
    int n_ue = 5;
    double bandwidth_hz = 10e6;
    int n_rb = 50;                  // RBs aggregated into the single RBG
    double rb_bandwidth_hz = 180e3;
    double tti_s = 1e-3;

    double target_bler = 0.1;
    double olla_step_down_db = 0.9;
    double olla_step_up_db = 0.1;   // must equal step_down * bler/(1-bler)
    double olla_clamp_db = 10.0;
    double bler_slope_db = 0.5;

    int feedback_delay_ttis = 4;
    int max_harq_retx = 3;

    double avg_snr_min_db = 0.0;
    double avg_snr_max_db = 20.0;

    // Average-throughput tracker (T_n) parameters.
    int window_w = 100;
    double epsilon_init = 1.0;      // bits/TTI

    std::uint64_t seed = 1;
    std::vector<McsEntry> mcs_table = default_mcs_table();

    // Throws ConfigError on any violated invariant.
    void validate() const;

    // Keeps the OLLA equilibrium at target_bler: up = down * bler/(1-bler).
    double derived_olla_step_up_db() const {
        return olla_step_down_db * target_bler / (1.0 - target_bler);
    }

    // Largest achievable instantaneous rate over the table, in bits/TTI.
    double max_rate_bits_per_tti() const;
};

}  // namespace schedrl::env
