#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "schedrl/errors.hpp"
#include "schedrl/harness/emit.hpp"
#include "schedrl/harness/run_config.hpp"
#include "schedrl/harness/trainer.hpp"

namespace {

using namespace schedrl;

int resolve_threads(const harness::RunConfig& cfg) {
    if (cfg.threads > 0) {
        return cfg.threads;
    }
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) {
        hw = 1;
    }
    return std::min(cfg.n_envs, hw);
}

harness::RunConfig load_config(const std::string& config_path,
                               const std::vector<std::string>& overrides) {
    harness::RunConfig cfg;
    if (!config_path.empty()) {
        cfg = harness::parse_run_config_file(config_path);
    }
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        check_config(eq != std::string::npos, "--set expects key=value, got '" + kv + "'");
        harness::apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    cfg.hp.updates_per_eval = cfg.eval_every;
    cfg.validate();
    return cfg;
}

void print_final(const harness::TrainingLog& log) {
    const auto& rec = log.evals.back();
    std::printf("[%s] seed=%llu updates=%ld final tp_diff=%+.4f jfi_diff=%+.4f\n",
                log.label.c_str(), static_cast<unsigned long long>(log.run_seed),
                log.updates_done, rec.tp_diff, rec.jfi_diff);
}

int cmd_train(const harness::RunConfig& cfg) {
    harness::ThreadPool pool(resolve_threads(cfg));
    std::filesystem::create_directories(cfg.out_dir);
    std::vector<harness::TrainingLog> logs, logs_b;
    for (const std::uint64_t seed : cfg.seeds) {
        const std::string tag = "_seed" + std::to_string(seed) + ".ckpt";
        switch (cfg.method) {
            case harness::Method::DIRECT: {
                auto out = harness::run_direct(cfg, seed, pool);
                out.agent.save(cfg.out_dir + "/agent_direct" + tag);
                print_final(out.log);
                logs.push_back(std::move(out.log));
                break;
            }
            case harness::Method::EXPERT: {
                auto out = harness::run_expert(cfg, seed, pool);
                out.agent.save(cfg.out_dir + "/agent_expert" + tag);
                print_final(out.log);
                logs.push_back(std::move(out.log));
                break;
            }
            case harness::Method::DUAL: {
                auto out = harness::run_dual(cfg, seed, pool);
                out.agent_a.save(cfg.out_dir + "/agent_dual0" + tag);
                out.agent_b.save(cfg.out_dir + "/agent_dual1" + tag);
                print_final(out.log_a);
                print_final(out.log_b);
                logs.push_back(std::move(out.log_a));
                logs_b.push_back(std::move(out.log_b));
                break;
            }
            case harness::Method::BASELINE_ONLY:
                throw ConfigError("train: method baseline-only is not trainable; use the "
                                  "baseline subcommand");
        }
    }
    if (cfg.method == harness::Method::DUAL) {
        harness::emit_results(logs, cfg.out_dir, "results_agent0");
        harness::emit_results(logs_b, cfg.out_dir, "results_agent1");
    } else {
        harness::emit_results(logs, cfg.out_dir, "results");
    }
    return 0;
}

int cmd_baseline(const harness::RunConfig& cfg, const std::string& scheduler,
                 const std::string& out_dir) {
    harness::ThreadPool pool(resolve_threads(cfg));
    harness::PolicyFn policy;
    if (scheduler == "pf") {
        policy = harness::pf_policy();
    } else if (scheduler == "maxci") {
        policy = harness::max_ci_policy();
    } else if (scheduler == "rr") {
        policy = harness::round_robin_policy();
    } else {
        throw ConfigError("baseline: unknown scheduler '" + scheduler + "'");
    }
    std::vector<harness::TrainingLog> logs;
    for (const std::uint64_t seed : cfg.seeds) {
        harness::TrainingLog log;
        log.run_seed = seed;
        log.label = "baseline/" + scheduler;
        log.evals.push_back(harness::evaluate_policy_vs_pf(policy, cfg, seed, 0, pool));
        print_final(log);
        logs.push_back(std::move(log));
    }
    if (!out_dir.empty()) {
        harness::emit_results(logs, out_dir, "baseline_" + scheduler);
    }
    return 0;
}

int cmd_eval(const harness::RunConfig& cfg, const std::string& checkpoint,
             const std::string& out_dir) {
    harness::ThreadPool pool(resolve_threads(cfg));
    const auto agent = drl::DdpgAgent::load(checkpoint);
    check_config(agent.n_ue() == cfg.sim.n_ue,
                 "eval: checkpoint was trained for " + std::to_string(agent.n_ue()) +
                     " UEs but the config simulates " + std::to_string(cfg.sim.n_ue));
    std::vector<harness::TrainingLog> logs;
    for (const std::uint64_t seed : cfg.seeds) {
        harness::TrainingLog log;
        log.run_seed = seed;
        log.label = "eval";
        log.updates_done = agent.update_count();
        log.evals.push_back(
            harness::evaluate_vs_pf(agent, cfg, seed, agent.update_count(), pool));
        print_final(log);
        logs.push_back(std::move(log));
    }
    if (!out_dir.empty()) {
        harness::emit_results(logs, out_dir, "eval_results");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-cell downlink scheduling: PF baselines and a DDPG scheduler"};
    app.require_subcommand(1);

    std::string config_path, out_dir, method, scheduler, checkpoint, csv_path, svg_path;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> overrides;

    auto* train = app.add_subcommand("train", "train a scheduling agent");
    train->add_option("--method", method, "training methodology")
        ->required()
        ->check(CLI::IsMember({"direct", "dual", "expert"}));
    train->add_option("--config", config_path, "run configuration file")->required();
    train->add_option("--seeds", seeds, "run seeds (one training run each)");
    train->add_option("--out", out_dir, "output directory");
    train->add_option("--set", overrides, "extra key=value config overrides");

    auto* baseline = app.add_subcommand("baseline", "evaluate a classic scheduler against PF");
    baseline->add_option("--scheduler", scheduler, "which scheduler to run")
        ->required()
        ->check(CLI::IsMember({"pf", "maxci", "rr"}));
    baseline->add_option("--config", config_path, "run configuration file");
    baseline->add_option("--seeds", seeds, "run seeds");
    baseline->add_option("--out", out_dir, "output directory for CSV/plot");
    baseline->add_option("--set", overrides, "extra key=value config overrides");

    auto* evalc = app.add_subcommand("eval", "evaluate a trained checkpoint against PF");
    evalc->add_option("--checkpoint", checkpoint, "agent checkpoint file")->required();
    evalc->add_option("--config", config_path, "run configuration file");
    evalc->add_option("--seeds", seeds, "run seeds");
    evalc->add_option("--out", out_dir, "output directory for CSV/plot");
    evalc->add_option("--set", overrides, "extra key=value config overrides");

    auto* plot = app.add_subcommand("plot", "render the diff curves from a results CSV");
    plot->add_option("--csv", csv_path, "results CSV")->required();
    plot->add_option("--out", svg_path, "output SVG path (default: CSV with .svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (plot->parsed()) {
            if (svg_path.empty()) {
                svg_path = std::filesystem::path(csv_path).replace_extension(".svg").string();
            }
            schedrl::harness::write_plot_svg(csv_path, svg_path);
            std::printf("[plot] wrote %s\n", svg_path.c_str());
            return 0;
        }
        auto cfg = load_config(config_path, overrides);
        if (!seeds.empty()) {
            cfg.seeds = seeds;
        }
        if (!out_dir.empty()) {
            cfg.out_dir = out_dir;
        }
        if (train->parsed()) {
            cfg.method = schedrl::harness::parse_method(method);
            return cmd_train(cfg);
        }
        if (baseline->parsed()) {
            return cmd_baseline(cfg, scheduler, out_dir);
        }
        if (evalc->parsed()) {
            return cmd_eval(cfg, checkpoint, out_dir);
        }
    } catch (const schedrl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const schedrl::NumericsError& e) {
        std::cerr << "numeric abort: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
