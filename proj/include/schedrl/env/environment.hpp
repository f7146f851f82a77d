#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "schedrl/env/sim_config.hpp"
#include "schedrl/rng.hpp"
#include "schedrl/sched/metrics.hpp"

namespace schedrl::env {

struct ChannelSample {
    int ue_id = 0;
    double fading_power = 1.0;      // unit-mean exponential
    double sinr_true_db = 0.0;
    double sinr_reported_db = 0.0;  // sinr_true_db from feedback_delay_ttis earlier
};

struct HarqProcess {
    bool active = false;
    int mcs = 0;
    int retx_count = 0;
    double tb_size_bits = 0.0;
};

struct UeContext {
    int ue_id = 0;
    double avg_snr_db = 0.0;        // fixed per episode
    double olla_offset_db = 0.0;
    HarqProcess harq;
    double last_instantaneous_rate = 0.0;  // I_n, bits/TTI
    ChannelSample channel;
};

struct TtiResult {
    long tti = 0;
    int scheduled_ue = 0;
    bool ack = false;
    double delivered_bits = 0.0;          // 0 on NACK
    std::vector<double> per_ue_inst_rate; // I_n(t) for all n
};

// Raw per-UE MDP state at one TTI. The harness normalizes it before it
// reaches the agent.
struct TtiObservation {
    std::vector<double> inst_rate;  // I_n, bits/TTI
    std::vector<double> avg_rate;   // T_n, bits/TTI

    // [I_0..I_{N-1}, T_0..T_{N-1}]
    std::vector<double> flatten() const;
};

// sinr = avg_snr + 10*log10(fading_power)
double channel_sinr_db(double avg_snr_db, double fading_power);

// Fixed-step outer loop: ACK nudges the offset up, NACK pushes it down,
// clamped to +-olla_clamp_db.
double olla_update(double offset_db, bool ack, const SimConfig& cfg);

// Sigmoid BLER in dB, slope cfg.bler_slope_db, shifted so that
// bler(sinr == threshold) == cfg.target_bler.
double bler_probability(const McsEntry& mcs, double sinr_true_db, const SimConfig& cfg);

// ACK with probability 1 - bler. Consumes one uniform draw.
bool decode_outcome(const McsEntry& mcs, double sinr_true_db, const SimConfig& cfg, Rng& rng);

// bits/TTI carried by one RBG at this spectral efficiency.
double estimate_rate_bits(const McsEntry& mcs, const SimConfig& cfg);

// TTI-level single-cell downlink simulator. Channel evolution is driven by
// per-UE streams that advance identically no matter which UE is scheduled,
// so two instances built from the same (config, episode_seed) observe the
// same ChannelSample sequence under any two action sequences.
class Environment {
  public:
    explicit Environment(SimConfig cfg);

    TtiObservation reset(std::uint64_t episode_seed);

    // Advance one TTI: transmit to scheduled_ue (HARQ retransmission if its
    // process is active, otherwise a fresh transport block at the AMC pick),
    // resolve the decode, run OLLA, and update T_n for every UE.
    std::pair<TtiResult, TtiObservation> step(int scheduled_ue);

    TtiObservation observation() const;

    long tti() const { return tti_; }
    const SimConfig& config() const { return cfg_; }
    const UeContext& ue(int n) const { return ues_.at(static_cast<std::size_t>(n)); }
    const sched::ThroughputTracker& tracker() const { return tracker_; }
    const std::vector<double>& inst_rates() const { return inst_rates_; }

  private:
    void draw_all_channels();

    SimConfig cfg_;
    std::vector<UeContext> ues_;
    sched::ThroughputTracker tracker_;
    std::vector<Rng> channel_rngs_;  // one stream per UE
    Rng decode_rng_;
    std::vector<double> inst_rates_;
    std::vector<double> sinr_ring_;  // (delay+1) rows of n_ue true-SINR entries
    long tti_ = 0;
    bool ready_ = false;
};

}  // namespace schedrl::env
