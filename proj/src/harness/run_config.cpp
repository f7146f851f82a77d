#include "schedrl/harness/run_config.hpp"

#include <fstream>
#include <sstream>

#include "schedrl/errors.hpp"

namespace schedrl::harness {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        check_config(used == v.size(), "");
        return x;
    } catch (...) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'");
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long x = std::stol(v, &used);
        check_config(used == v.size(), "");
        return x;
    } catch (...) {
        throw ConfigError("config: bad integer value for " + key + ": '" + v + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const unsigned long long x = std::stoull(v, &used);
        check_config(used == v.size(), "");
        return x;
    } catch (...) {
        throw ConfigError("config: bad integer value for " + key + ": '" + v + "'");
    }
}

std::vector<std::uint64_t> to_seed_list(const std::string& key, const std::string& v) {
    std::vector<std::uint64_t> seeds;
    std::string token;
    std::istringstream in(v);
    while (std::getline(in, token, ',')) {
        token = trim(token);
        if (!token.empty()) {
            seeds.push_back(to_u64(key, token));
        }
    }
    check_config(!seeds.empty(), "config: empty seed list");
    return seeds;
}

}  // namespace

Method parse_method(const std::string& name) {
    if (name == "direct") return Method::DIRECT;
    if (name == "dual") return Method::DUAL;
    if (name == "expert") return Method::EXPERT;
    if (name == "baseline-only") return Method::BASELINE_ONLY;
    throw ConfigError("config: unknown method '" + name + "'");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::DIRECT: return "direct";
        case Method::DUAL: return "dual";
        case Method::EXPERT: return "expert";
        case Method::BASELINE_ONLY: return "baseline-only";
    }
    return "?";
}

void RunConfig::validate() const {
    check_config(n_envs >= 1, "RunConfig: n_envs must be >= 1");
    check_config(eval_every >= 1, "RunConfig: eval_every must be >= 1");
    check_config(total_updates >= 0, "RunConfig: total_updates must be >= 0");
    check_config(!seeds.empty(), "RunConfig: at least one seed required");
    check_config(!out_dir.empty(), "RunConfig: out_dir required");
    check_config(window_len >= 1, "RunConfig: window_len must be >= 1");
    check_config(episode_len_ttis >= 0, "RunConfig: episode_len_ttis must be >= 0");
    check_config(eval_window_ttis >= 1, "RunConfig: eval window must be >= 1 TTI");
    check_config(n_eval_seeds >= 1, "RunConfig: need at least one eval seed");
    check_config(dual_phase_updates >= 1, "RunConfig: dual phase must be >= 1 update");
    check_config(compare_rel_tol >= 0.0, "RunConfig: compare tolerance must be >= 0");
    check_config(threads >= 0, "RunConfig: threads must be >= 0");
    sim.validate();
    hp.validate();
    weights.validate();
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    // run-level
    if (key == "method") { cfg.method = parse_method(value); return; }
    if (key == "n_envs") { cfg.n_envs = static_cast<int>(to_long(key, value)); return; }
    if (key == "total_updates") { cfg.total_updates = to_long(key, value); return; }
    if (key == "eval_every") { cfg.eval_every = static_cast<int>(to_long(key, value)); return; }
    if (key == "seeds") { cfg.seeds = to_seed_list(key, value); return; }
    if (key == "out_dir") { cfg.out_dir = value; return; }
    if (key == "window_len") { cfg.window_len = static_cast<int>(to_long(key, value)); return; }
    if (key == "episode_len_ttis") { cfg.episode_len_ttis = to_long(key, value); return; }
    if (key == "eval_window_ttis") { cfg.eval_window_ttis = static_cast<int>(to_long(key, value)); return; }
    if (key == "n_eval_seeds") { cfg.n_eval_seeds = static_cast<int>(to_long(key, value)); return; }
    if (key == "dual_phase_updates") { cfg.dual_phase_updates = static_cast<int>(to_long(key, value)); return; }
    if (key == "compare_rel_tol") { cfg.compare_rel_tol = to_double(key, value); return; }
    if (key == "threads") { cfg.threads = static_cast<int>(to_long(key, value)); return; }
    // simulator
    if (key == "sim.n_ue") { cfg.sim.n_ue = static_cast<int>(to_long(key, value)); return; }
    if (key == "sim.bandwidth_hz") { cfg.sim.bandwidth_hz = to_double(key, value); return; }
    if (key == "sim.n_rb") { cfg.sim.n_rb = static_cast<int>(to_long(key, value)); return; }
    if (key == "sim.rb_bandwidth_hz") { cfg.sim.rb_bandwidth_hz = to_double(key, value); return; }
    if (key == "sim.tti_s") { cfg.sim.tti_s = to_double(key, value); return; }
    if (key == "sim.target_bler") { cfg.sim.target_bler = to_double(key, value); return; }
    if (key == "sim.olla_step_down_db") { cfg.sim.olla_step_down_db = to_double(key, value); return; }
    if (key == "sim.olla_step_up_db") { cfg.sim.olla_step_up_db = to_double(key, value); return; }
    if (key == "sim.olla_clamp_db") { cfg.sim.olla_clamp_db = to_double(key, value); return; }
    if (key == "sim.bler_slope_db") { cfg.sim.bler_slope_db = to_double(key, value); return; }
    if (key == "sim.feedback_delay_ttis") { cfg.sim.feedback_delay_ttis = static_cast<int>(to_long(key, value)); return; }
    if (key == "sim.max_harq_retx") { cfg.sim.max_harq_retx = static_cast<int>(to_long(key, value)); return; }
    if (key == "sim.avg_snr_min_db") { cfg.sim.avg_snr_min_db = to_double(key, value); return; }
    if (key == "sim.avg_snr_max_db") { cfg.sim.avg_snr_max_db = to_double(key, value); return; }
    if (key == "sim.window_w") { cfg.sim.window_w = static_cast<int>(to_long(key, value)); return; }
    if (key == "sim.epsilon_init") { cfg.sim.epsilon_init = to_double(key, value); return; }
    if (key == "sim.seed") { cfg.sim.seed = to_u64(key, value); return; }
    if (key == "sim.mcs_table") { cfg.sim.mcs_table = env::load_mcs_table(value); return; }
    // learning
    if (key == "hp.actor_lr") { cfg.hp.actor_lr = to_double(key, value); return; }
    if (key == "hp.critic_lr") { cfg.hp.critic_lr = to_double(key, value); return; }
    if (key == "hp.gamma") { cfg.hp.gamma = to_double(key, value); return; }
    if (key == "hp.tau") { cfg.hp.tau = to_double(key, value); return; }
    if (key == "hp.batch_size") { cfg.hp.batch_size = static_cast<int>(to_long(key, value)); return; }
    if (key == "hp.noise_scale") { cfg.hp.noise_scale = to_double(key, value); return; }
    if (key == "hp.noise_decay") { cfg.hp.noise_decay = to_double(key, value); return; }
    if (key == "hp.updates_per_eval") { cfg.hp.updates_per_eval = static_cast<int>(to_long(key, value)); return; }
    if (key == "hp.hidden_units") { cfg.hp.hidden_units = static_cast<int>(to_long(key, value)); return; }
    if (key == "hp.hidden_layers") { cfg.hp.hidden_layers = static_cast<int>(to_long(key, value)); return; }
    if (key == "hp.replay_capacity") { cfg.hp.replay_capacity = static_cast<std::size_t>(to_u64(key, value)); return; }
    // reward weights
    if (key == "weights.alpha") { cfg.weights.alpha = to_double(key, value); return; }
    if (key == "weights.beta") { cfg.weights.beta = to_double(key, value); return; }
    throw ConfigError("config: unknown key '" + key + "'");
}

RunConfig parse_run_config_file(const std::string& path) {
    std::ifstream in(path);
    check_config(in.good(), "config: cannot open " + path);
    RunConfig cfg;
    bool olla_up_explicit = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        check_config(eq != std::string::npos,
                     "config: expected key = value at " + path + ":" + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        check_config(!key.empty(), "config: empty key at " + path + ":" + std::to_string(lineno));
        if (key == "sim.olla_step_up_db") {
            olla_up_explicit = true;
        }
        apply_config_entry(cfg, key, value);
    }
    if (!olla_up_explicit) {
        cfg.sim.olla_step_up_db = cfg.sim.derived_olla_step_up_db();
    }
    cfg.hp.updates_per_eval = cfg.eval_every;
    cfg.validate();
    return cfg;
}

}  // namespace schedrl::harness
