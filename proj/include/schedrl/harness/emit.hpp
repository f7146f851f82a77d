#pragma once

#include <string>
#include <vector>

#include "schedrl/harness/trainer.hpp"

namespace schedrl::harness {

// One row per evaluation milestone per run seed; diffs are the means over
// the held-out eval seeds. Header: update_count,tp_diff,jfi_diff,seed.
void write_results_csv(const std::vector<TrainingLog>& logs, const std::string& csv_path);

// Companion series for inspection: per-round mean ingested reward.
void write_rewards_csv(const std::vector<TrainingLog>& logs, const std::string& csv_path);

// Renders both diff curves vs update_count from a results CSV, one polyline
// per (metric, seed), with a zero reference line. The CSV is the source of
// truth; the plot is always derived from it.
void write_plot_svg(const std::string& csv_path, const std::string& svg_path);

// CSV first, then the plot read back from that CSV. basename "results"
// yields results.csv, results.svg and results_rewards.csv under out_dir.
void emit_results(const std::vector<TrainingLog>& logs, const std::string& out_dir,
                  const std::string& basename);

}  // namespace schedrl::harness
