#include "schedrl/env/mcs.hpp"

#include <fstream>
#include <sstream>

#include "schedrl/errors.hpp"

namespace schedrl::env {

const std::vector<McsEntry>& default_mcs_table() {
    // <index> <modulation> <code rate> <spectral efficiency> <SINR threshold>
    static const std::vector<McsEntry> table = {
        {0, 2, 0.0762, 0.1523, -6.7},   // QPSK 1/13
        {1, 2, 0.1172, 0.2344, -4.7},   // QPSK 1/9
        {2, 2, 0.1885, 0.3770, -2.3},   // QPSK 1/5
        {3, 2, 0.3008, 0.6016, 0.2},    // QPSK 1/3
        {4, 2, 0.4385, 0.8770, 2.4},    // QPSK 1/2
        {5, 2, 0.5879, 1.1758, 4.3},    // QPSK 3/5
        {6, 4, 0.3691, 1.4766, 5.9},    // 16QAM 1/3
        {7, 4, 0.4785, 1.9141, 8.1},    // 16QAM 1/2
        {8, 4, 0.6016, 2.4063, 10.3},   // 16QAM 3/5
        {9, 6, 0.4551, 2.7305, 11.7},   // 64QAM 1/2
        {10, 6, 0.5537, 3.3223, 14.1},  // 64QAM 5/9
        {11, 6, 0.6504, 3.9023, 16.3},  // 64QAM 2/3
        {12, 6, 0.7539, 4.5234, 18.7},  // 64QAM 3/4
        {13, 6, 0.8525, 5.1152, 21.0},  // 64QAM 5/6
        {14, 6, 0.9258, 5.5547, 22.7},  // 64QAM 9/10
    };
    return table;
}

void validate_mcs_table(const std::vector<McsEntry>& table) {
    check_config(!table.empty(), "MCS table: empty");
    for (std::size_t i = 0; i < table.size(); ++i) {
        const McsEntry& e = table[i];
        check_config(e.spectral_efficiency > 0.0, "MCS table: spectral efficiency must be > 0");
        check_config(e.modulation_order > 0, "MCS table: modulation order must be > 0");
        check_config(e.code_rate > 0.0 && e.code_rate <= 1.0, "MCS table: code rate out of (0,1]");
        if (i > 0) {
            check_config(e.spectral_efficiency > table[i - 1].spectral_efficiency,
                         "MCS table: spectral efficiency not strictly increasing");
            check_config(e.sinr_threshold_db > table[i - 1].sinr_threshold_db,
                         "MCS table: SINR threshold not strictly increasing");
        }
    }
}

std::vector<McsEntry> load_mcs_table(const std::string& path) {
    std::ifstream in(path);
    check_config(in.good(), "MCS table: cannot open " + path);
    std::vector<McsEntry> table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream row(line);
        McsEntry e;
        if (!(row >> e.index)) {
            continue;  // blank or comment-only line
        }
        if (!(row >> e.modulation_order >> e.code_rate >> e.spectral_efficiency >>
              e.sinr_threshold_db)) {
            throw ConfigError("MCS table: malformed row at " + path + ":" +
                              std::to_string(lineno));
        }
        table.push_back(e);
    }
    validate_mcs_table(table);
    return table;
}

const McsEntry& select_mcs(double sinr_reported_db, double olla_offset_db,
                           const std::vector<McsEntry>& table) {
    check_contract(!table.empty(), "select_mcs: empty table");
    const double effective = sinr_reported_db + olla_offset_db;
    const McsEntry* chosen = &table.front();
    for (const McsEntry& e : table) {
        if (e.sinr_threshold_db <= effective) {
            chosen = &e;
        } else {
            break;
        }
    }
    return *chosen;
}

}  // namespace schedrl::env
