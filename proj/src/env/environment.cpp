#include "schedrl/env/environment.hpp"

#include <algorithm>
#include <cmath>

#include "schedrl/errors.hpp"

namespace schedrl::env {

namespace {
// Seed-derivation tags, one per independent stream.
constexpr std::uint64_t kTagUePosition = 1;
constexpr std::uint64_t kTagDecode = 2;
constexpr std::uint64_t kTagChannelBase = 100;
}  // namespace

std::vector<double> TtiObservation::flatten() const {
    std::vector<double> out;
    out.reserve(inst_rate.size() + avg_rate.size());
    out.insert(out.end(), inst_rate.begin(), inst_rate.end());
    out.insert(out.end(), avg_rate.begin(), avg_rate.end());
    return out;
}

double channel_sinr_db(double avg_snr_db, double fading_power) {
    check_contract(fading_power > 0.0, "channel_sinr_db: fading power must be > 0");
    return avg_snr_db + 10.0 * std::log10(fading_power);
}

double olla_update(double offset_db, bool ack, const SimConfig& cfg) {
    const double next =
        ack ? offset_db + cfg.olla_step_up_db : offset_db - cfg.olla_step_down_db;
    return std::clamp(next, -cfg.olla_clamp_db, cfg.olla_clamp_db);
}

double bler_probability(const McsEntry& mcs, double sinr_true_db, const SimConfig& cfg) {
    // Center the sigmoid below the threshold so bler(threshold) == target.
    const double shift =
        -cfg.bler_slope_db * std::log((1.0 - cfg.target_bler) / cfg.target_bler);
    const double x = (sinr_true_db - mcs.sinr_threshold_db - shift) / cfg.bler_slope_db;
    return 1.0 / (1.0 + std::exp(x));
}

bool decode_outcome(const McsEntry& mcs, double sinr_true_db, const SimConfig& cfg, Rng& rng) {
    return rng.uniform() >= bler_probability(mcs, sinr_true_db, cfg);
}

double estimate_rate_bits(const McsEntry& mcs, const SimConfig& cfg) {
    return mcs.spectral_efficiency * cfg.n_rb * cfg.rb_bandwidth_hz * cfg.tti_s;
}

Environment::Environment(SimConfig cfg)
    : cfg_(std::move(cfg)),
      tracker_(1),
      decode_rng_(0) {
    cfg_.validate();
}

TtiObservation Environment::reset(std::uint64_t episode_seed) {
    const int n = cfg_.n_ue;
    Rng position_rng(derive_seed(cfg_.seed, episode_seed, kTagUePosition));
    decode_rng_ = Rng(derive_seed(cfg_.seed, episode_seed, kTagDecode));
    channel_rngs_.clear();
    ues_.assign(static_cast<std::size_t>(n), UeContext{});
    for (int u = 0; u < n; ++u) {
        ues_[u].ue_id = u;
        ues_[u].avg_snr_db =
            position_rng.uniform(cfg_.avg_snr_min_db, cfg_.avg_snr_max_db);
        channel_rngs_.emplace_back(
            derive_seed(cfg_.seed, episode_seed, kTagChannelBase + static_cast<std::uint64_t>(u)));
    }
    tracker_ = sched::ThroughputTracker(n, cfg_.window_w, cfg_.epsilon_init);
    inst_rates_.assign(static_cast<std::size_t>(n), 0.0);
    sinr_ring_.assign(static_cast<std::size_t>(cfg_.feedback_delay_ttis + 1) * n, 0.0);
    tti_ = 0;
    ready_ = true;
    draw_all_channels();
    return observation();
}

void Environment::draw_all_channels() {
    const int n = cfg_.n_ue;
    const int ring_rows = cfg_.feedback_delay_ttis + 1;
    const std::size_t row = static_cast<std::size_t>(tti_ % ring_rows) * n;
    // Before the first report arrives, the receiver keeps reporting the
    // episode's initial measurement.
    const long report_tti = std::max<long>(0, tti_ - cfg_.feedback_delay_ttis);
    const std::size_t report_row = static_cast<std::size_t>(report_tti % ring_rows) * n;
    for (int u = 0; u < n; ++u) {
        UeContext& ue = ues_[u];
        const double fading = channel_rngs_[u].exponential();
        ChannelSample s;
        s.ue_id = u;
        s.fading_power = fading;
        s.sinr_true_db = channel_sinr_db(ue.avg_snr_db, fading);
        sinr_ring_[row + u] = s.sinr_true_db;
        s.sinr_reported_db = sinr_ring_[report_row + u];
        ue.channel = s;
        const McsEntry& mcs = select_mcs(s.sinr_reported_db, ue.olla_offset_db, cfg_.mcs_table);
        ue.last_instantaneous_rate = estimate_rate_bits(mcs, cfg_);
        inst_rates_[u] = ue.last_instantaneous_rate;
    }
}

TtiObservation Environment::observation() const {
    check_contract(ready_, "Environment: reset() before observation()");
    return TtiObservation{inst_rates_, tracker_.avg()};
}

std::pair<TtiResult, TtiObservation> Environment::step(int scheduled_ue) {
    check_contract(ready_, "Environment: reset() before step()");
    check_contract(scheduled_ue >= 0 && scheduled_ue < cfg_.n_ue,
                   "Environment: scheduled UE index out of range");

    UeContext& ue = ues_[scheduled_ue];
    const bool is_retx = ue.harq.active;
    int mcs_index;
    double tb_bits;
    int attempts_done = 0;  // retransmissions already performed for this block
    if (is_retx) {
        mcs_index = ue.harq.mcs;
        tb_bits = ue.harq.tb_size_bits;
        attempts_done = ++ue.harq.retx_count;
    } else {
        const McsEntry& mcs =
            select_mcs(ue.channel.sinr_reported_db, ue.olla_offset_db, cfg_.mcs_table);
        mcs_index = mcs.index;
        tb_bits = estimate_rate_bits(mcs, cfg_);
    }

    const McsEntry& used = cfg_.mcs_table[static_cast<std::size_t>(mcs_index)];
    const bool ack = decode_outcome(used, ue.channel.sinr_true_db, cfg_, decode_rng_);
    ue.olla_offset_db = olla_update(ue.olla_offset_db, ack, cfg_);

    double delivered = 0.0;
    if (ack) {
        delivered = tb_bits;
        ue.harq = HarqProcess{};
    } else if (attempts_done >= cfg_.max_harq_retx) {
        ue.harq = HarqProcess{};  // block dropped
    } else {
        ue.harq.active = true;
        ue.harq.mcs = mcs_index;
        ue.harq.retx_count = attempts_done;
        ue.harq.tb_size_bits = tb_bits;
    }

    TtiResult result;
    result.tti = tti_;
    result.scheduled_ue = scheduled_ue;
    result.ack = ack;
    result.delivered_bits = delivered;
    result.per_ue_inst_rate = inst_rates_;

    std::vector<double> delivered_vec(static_cast<std::size_t>(cfg_.n_ue), 0.0);
    delivered_vec[static_cast<std::size_t>(scheduled_ue)] = delivered;
    tracker_.update(delivered_vec);

    ++tti_;
    draw_all_channels();
    return {std::move(result), observation()};
}

}  // namespace schedrl::env
