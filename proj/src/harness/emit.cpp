#include "schedrl/harness/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "schedrl/errors.hpp"

namespace schedrl::harness {

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

void require_non_empty(const std::vector<TrainingLog>& logs) {
    check_config(!logs.empty(), "emit: no training logs");
    for (const auto& log : logs) {
        check_config(!log.evals.empty(), "emit: training log has no evaluations");
    }
}

struct CsvRow {
    long update_count = 0;
    double tp_diff = 0.0;
    double jfi_diff = 0.0;
    std::uint64_t seed = 0;
};

std::vector<CsvRow> read_results_csv(const std::string& path) {
    std::ifstream in(path);
    check_config(in.good(), "plot: cannot open " + path);
    std::string line;
    check_config(static_cast<bool>(std::getline(in, line)), "plot: empty CSV " + path);
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    check_config(line == "update_count,tp_diff,jfi_diff,seed",
                 "plot: unexpected CSV header '" + line + "'");
    std::vector<CsvRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::istringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        check_config(fields.size() == 4,
                     "plot: bad row at " + path + ":" + std::to_string(lineno));
        try {
            rows.push_back({std::stol(fields[0]), std::stod(fields[1]), std::stod(fields[2]),
                            std::stoull(fields[3])});
        } catch (...) {
            throw ConfigError("plot: unparsable row at " + path + ":" + std::to_string(lineno));
        }
    }
    check_config(!rows.empty(), "plot: CSV has no data rows: " + path);
    return rows;
}

double lerp(double a, double b, double t) { return a + (b - a) * t; }

}  // namespace

void write_results_csv(const std::vector<TrainingLog>& logs, const std::string& csv_path) {
    require_non_empty(logs);
    std::ofstream out(csv_path, std::ios::trunc);
    check_config(out.good(), "emit: cannot write " + csv_path);
    out << "update_count,tp_diff,jfi_diff,seed\n";
    for (const auto& log : logs) {
        for (const auto& rec : log.evals) {
            out << rec.update_count << ',' << fmt_double(rec.tp_diff) << ','
                << fmt_double(rec.jfi_diff) << ',' << log.run_seed << '\n';
        }
    }
    check_config(out.good(), "emit: write failed for " + csv_path);
}

void write_rewards_csv(const std::vector<TrainingLog>& logs, const std::string& csv_path) {
    require_non_empty(logs);
    std::ofstream out(csv_path, std::ios::trunc);
    check_config(out.good(), "emit: cannot write " + csv_path);
    out << "round,mean_reward,seed\n";
    for (const auto& log : logs) {
        long round = 0;
        for (double r : log.reward_history) {
            out << ++round << ',' << fmt_double(r) << ',' << log.run_seed << '\n';
        }
    }
    check_config(out.good(), "emit: write failed for " + csv_path);
}

void write_plot_svg(const std::string& csv_path, const std::string& svg_path) {
    const auto rows = read_results_csv(csv_path);

    // insertion-ordered list of seeds so the palette assignment is stable
    std::vector<std::uint64_t> seeds;
    for (const auto& r : rows) {
        if (std::find(seeds.begin(), seeds.end(), r.seed) == seeds.end()) {
            seeds.push_back(r.seed);
        }
    }

    long u_min = rows.front().update_count, u_max = u_min;
    double v_min = 0.0, v_max = 0.0;  // always include the zero line
    for (const auto& r : rows) {
        u_min = std::min(u_min, r.update_count);
        u_max = std::max(u_max, r.update_count);
        v_min = std::min({v_min, r.tp_diff, r.jfi_diff});
        v_max = std::max({v_max, r.tp_diff, r.jfi_diff});
    }
    if (u_min == u_max) {
        u_max = u_min + 1;
    }
    const double v_pad = std::max(0.05 * (v_max - v_min), 1e-3);
    v_min -= v_pad;
    v_max += v_pad;

    const double width = 860, height = 520;
    const double ml = 80, mr = 24, mt = 36, mb = 64;
    const double px0 = ml, px1 = width - mr, py0 = height - mb, py1 = mt;
    const auto sx = [&](double u) {
        return lerp(px0, px1, (u - static_cast<double>(u_min)) /
                                  static_cast<double>(u_max - u_min));
    };
    const auto sy = [&](double v) { return lerp(py0, py1, (v - v_min) / (v_max - v_min)); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2
        << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
           "scheduler vs PF, normalized difference</text>\n";

    // axes and ticks
    svg << "<line x1=\"" << px0 << "\" y1=\"" << py0 << "\" x2=\"" << px1 << "\" y2=\"" << py0
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << px0 << "\" y1=\"" << py0 << "\" x2=\"" << px0 << "\" y2=\"" << py1
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double u = lerp(static_cast<double>(u_min), static_cast<double>(u_max), i / 4.0);
        const double x = sx(u);
        svg << "<line x1=\"" << fmt_double(x) << "\" y1=\"" << py0 << "\" x2=\"" << fmt_double(x)
            << "\" y2=\"" << py0 + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt_double(x) << "\" y=\"" << py0 + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << fmt_double(std::round(u)) << "</text>\n";
        const double v = lerp(v_min, v_max, i / 4.0);
        const double y = sy(v);
        svg << "<line x1=\"" << px0 - 5 << "\" y1=\"" << fmt_double(y) << "\" x2=\"" << px0
            << "\" y2=\"" << fmt_double(y) << "\" stroke=\"black\"/>\n";
        char vb[32];
        std::snprintf(vb, sizeof(vb), "%.3g", v);
        svg << "<text x=\"" << px0 - 9 << "\" y=\"" << fmt_double(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << vb
            << "</text>\n";
    }
    svg << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"" << height - 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">training "
           "updates</text>\n";
    svg << "<text x=\"20\" y=\"" << (py0 + py1) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 20 "
        << (py0 + py1) / 2 << ")\">(agent - PF) / PF</text>\n";

    // zero reference
    svg << "<line x1=\"" << px0 << "\" y1=\"" << fmt_double(sy(0.0)) << "\" x2=\"" << px1
        << "\" y2=\"" << fmt_double(sy(0.0))
        << "\" stroke=\"#999999\" stroke-dasharray=\"6 4\"/>\n";

    const char* tp_color = "#1f77b4";
    const char* jfi_color = "#ff7f0e";
    for (std::size_t si = 0; si < seeds.size(); ++si) {
        const double opacity = seeds.size() > 1 ? 0.35 + 0.65 / static_cast<double>(seeds.size()) : 1.0;
        for (int metric = 0; metric < 2; ++metric) {
            std::ostringstream pts;
            for (const auto& r : rows) {
                if (r.seed != seeds[si]) {
                    continue;
                }
                const double v = metric == 0 ? r.tp_diff : r.jfi_diff;
                pts << fmt_double(sx(static_cast<double>(r.update_count))) << ','
                    << fmt_double(sy(v)) << ' ';
            }
            svg << "<polyline fill=\"none\" stroke=\"" << (metric == 0 ? tp_color : jfi_color)
                << "\" stroke-width=\"1.8\" stroke-opacity=\"" << fmt_double(opacity)
                << "\" points=\"" << pts.str() << "\"/>\n";
        }
    }

    // legend
    const double lx = px1 - 220, ly = py1 + 8;
    svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 28 << "\" y2=\"" << ly
        << "\" stroke=\"" << tp_color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << lx + 34 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">throughput diff</text>\n";
    svg << "<line x1=\"" << lx << "\" y1=\"" << ly + 18 << "\" x2=\"" << lx + 28 << "\" y2=\""
        << ly + 18 << "\" stroke=\"" << jfi_color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << lx + 34 << "\" y=\"" << ly + 22
        << "\" font-family=\"sans-serif\" font-size=\"12\">fairness (JFI) diff</text>\n";
    svg << "</svg>\n";

    std::ofstream out(svg_path, std::ios::trunc);
    check_config(out.good(), "plot: cannot write " + svg_path);
    out << svg.str();
    check_config(out.good(), "plot: write failed for " + svg_path);
}

void emit_results(const std::vector<TrainingLog>& logs, const std::string& out_dir,
                  const std::string& basename) {
    require_non_empty(logs);
    std::filesystem::create_directories(out_dir);
    const std::string csv = out_dir + "/" + basename + ".csv";
    write_results_csv(logs, csv);
    write_rewards_csv(logs, out_dir + "/" + basename + "_rewards.csv");
    write_plot_svg(csv, out_dir + "/" + basename + ".svg");
}

}  // namespace schedrl::harness
