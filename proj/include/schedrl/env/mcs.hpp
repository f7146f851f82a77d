#pragma once

#include <string>
#include <vector>

namespace schedrl::env {

// One row of the AMC table. sinr_threshold_db is the lowest SINR at which
// the predicted BLER stays at or below the configured target.
struct McsEntry {
    int index = 0;
    int modulation_order = 2;     // bits per symbol
    double code_rate = 0.0;
    double spectral_efficiency = 0.0;  // bits/s/Hz
    double sinr_threshold_db = 0.0;
};

// 15-entry table using the standard CQI spectral efficiencies.
const std::vector<McsEntry>& default_mcs_table();

// Throws ConfigError unless entries are strictly increasing in both
// spectral efficiency and SINR threshold.
void validate_mcs_table(const std::vector<McsEntry>& table);

// Whitespace-separated columns: index modulation_order code_rate
// spectral_efficiency sinr_threshold_db. '#' starts a comment.
std::vector<McsEntry> load_mcs_table(const std::string& path);

// Highest entry whose threshold is <= sinr_reported_db + olla_offset_db,
// or the lowest entry when none qualifies.
const McsEntry& select_mcs(double sinr_reported_db, double olla_offset_db,
                           const std::vector<McsEntry>& table);

}  // namespace schedrl::env
