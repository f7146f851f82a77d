#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "schedrl/errors.hpp"
#include "schedrl/harness/emit.hpp"
#include "schedrl/harness/run_config.hpp"
#include "schedrl/harness/trainer.hpp"
#include "schedrl/rng.hpp"

using namespace schedrl;
using namespace schedrl::harness;

namespace {

namespace fs = std::filesystem;

// Small everything: enough rounds to fill the batch and run a handful of
// updates, short eval windows. Keeps the slowest case here well under a
// second.
RunConfig tiny_config() {
    RunConfig cfg;
    cfg.sim.n_ue = 3;
    cfg.n_envs = 2;
    cfg.hp.hidden_units = 8;
    cfg.hp.batch_size = 8;
    cfg.total_updates = 5;
    cfg.eval_every = 5;
    cfg.hp.updates_per_eval = 5;
    cfg.window_len = 50;
    cfg.eval_window_ttis = 200;
    cfg.n_eval_seeds = 2;
    cfg.validate();
    return cfg;
}

std::string write_temp(const std::string& name, const std::string& body) {
    std::ofstream out(name);
    out << body;
    return name;
}

}  // namespace

TEST_CASE("state normalization maps each observation half onto [0,1]") {
    env::TtiObservation raw;
    raw.inst_rate = {2.0, 4.0, 1.0};
    raw.avg_rate = {10.0, 5.0, 20.0};
    const auto norm = normalize_state(raw);
    CHECK(norm.inst_rate[0] == doctest::Approx(0.5));
    CHECK(norm.inst_rate[1] == doctest::Approx(1.0));
    CHECK(norm.inst_rate[2] == doctest::Approx(0.25));
    CHECK(norm.avg_rate[0] == doctest::Approx(0.5));
    CHECK(norm.avg_rate[1] == doctest::Approx(0.25));
    CHECK(norm.avg_rate[2] == doctest::Approx(1.0));

    // scale invariance per half
    env::TtiObservation scaled;
    scaled.inst_rate = {200.0, 400.0, 100.0};
    scaled.avg_rate = {1.0, 0.5, 2.0};
    const auto norm2 = normalize_state(scaled);
    for (int n = 0; n < 3; ++n) {
        CHECK(norm2.inst_rate[n] == doctest::Approx(norm.inst_rate[n]));
        CHECK(norm2.avg_rate[n] == doctest::Approx(norm.avg_rate[n]));
    }

    env::TtiObservation zeros;
    zeros.inst_rate = {0.0, 0.0};
    zeros.avg_rate = {1.0, 1.0};
    CHECK_THROWS_AS(normalize_state(zeros), ContractViolation);
}

TEST_CASE("config files parse every section and reject junk") {
    const std::string path = write_temp("parse_ok.cfg",
        "# run shape\n"
        "method = expert\n"
        "n_envs = 4\n"
        "total_updates = 123\n"
        "eval_every = 10\n"
        "seeds = 3, 5, 9\n"
        "out_dir = some/dir\n"
        "window_len = 120\n"
        "episode_len_ttis = 600\n"
        "eval_window_ttis = 400\n"
        "n_eval_seeds = 3\n"
        "dual_phase_updates = 25\n"
        "compare_rel_tol = 0.02\n"
        "threads = 2\n"
        "sim.n_ue = 4\n"
        "sim.avg_snr_min_db = 2.0\n"
        "sim.avg_snr_max_db = 18.0\n"
        "sim.target_bler = 0.2\n"
        "sim.olla_step_down_db = 0.8\n"
        "sim.seed = 77\n"
        "hp.actor_lr = 2e-4\n"
        "hp.gamma = 0.9\n"
        "hp.hidden_units = 32\n"
        "hp.hidden_layers = 1\n"
        "weights.alpha = 0.9\n"
        "weights.beta = 1.15\n");
    const RunConfig cfg = parse_run_config_file(path);
    std::remove(path.c_str());

    CHECK(cfg.method == Method::EXPERT);
    CHECK(cfg.n_envs == 4);
    CHECK(cfg.total_updates == 123);
    CHECK(cfg.seeds == std::vector<std::uint64_t>{3, 5, 9});
    CHECK(cfg.out_dir == "some/dir");
    CHECK(cfg.window_len == 120);
    CHECK(cfg.episode_len_ttis == 600);
    CHECK(cfg.eval_window_ttis == 400);
    CHECK(cfg.n_eval_seeds == 3);
    CHECK(cfg.dual_phase_updates == 25);
    CHECK(cfg.compare_rel_tol == doctest::Approx(0.02));
    CHECK(cfg.threads == 2);
    CHECK(cfg.sim.n_ue == 4);
    CHECK(cfg.sim.avg_snr_min_db == doctest::Approx(2.0));
    CHECK(cfg.sim.seed == 77);
    CHECK(cfg.hp.actor_lr == doctest::Approx(2e-4));
    CHECK(cfg.hp.gamma == doctest::Approx(0.9));
    CHECK(cfg.hp.hidden_units == 32);
    CHECK(cfg.hp.hidden_layers == 1);
    CHECK(cfg.weights.alpha == doctest::Approx(0.9));
    CHECK(cfg.weights.beta == doctest::Approx(1.15));
    // eval cadence is mirrored into the agent's bookkeeping
    CHECK(cfg.hp.updates_per_eval == 10);
    // step-up left unset: derived from target_bler so OLLA settles at it
    CHECK(cfg.sim.olla_step_up_db == doctest::Approx(0.8 * 0.2 / 0.8));
    CHECK_NOTHROW(cfg.validate());

    const std::string bad1 = write_temp("parse_bad1.cfg", "no_such_key = 1\n");
    CHECK_THROWS_AS(parse_run_config_file(bad1), ConfigError);
    std::remove(bad1.c_str());

    const std::string bad2 = write_temp("parse_bad2.cfg", "hp.gamma = not_a_number\n");
    CHECK_THROWS_AS(parse_run_config_file(bad2), ConfigError);
    std::remove(bad2.c_str());

    const std::string bad3 = write_temp("parse_bad3.cfg",
        "sim.olla_step_up_db = 0.3\n");  // inconsistent with 10% target
    CHECK_THROWS_AS(parse_run_config_file(bad3), ConfigError);
    std::remove(bad3.c_str());

    CHECK_THROWS_AS(parse_run_config_file("definitely_missing.cfg"), ConfigError);
}

TEST_CASE("mirrored pair keeps identical fading streams under different schedules") {
    env::SimConfig sim;
    sim.n_ue = 4;
    sim.validate();
    MirroredEnvPair pair(sim, 50, 12345, 999);
    for (long t = 0; t < 300; ++t) {
        pair.step_side(0, static_cast<int>(t % 4));     // round robin
        pair.step_side(1, pair.pf_pick(1));             // PF
        CHECK(pair.channel_fingerprint(0) == pair.channel_fingerprint(1));
    }
    CHECK_NOTHROW(pair.check_mirror());
    CHECK(pair.environment(0).tti() == 300);
    CHECK(pair.environment(1).tti() == 300);
}

TEST_CASE("identical schedules on both sides land in the half-credit cell") {
    env::SimConfig sim;
    sim.n_ue = 3;
    sim.validate();
    MirroredEnvPair pair(sim, 40, 5150, 0);
    const reward::RewardWeights w{0.9, 1.15};
    for (long t = 0; t < 200; ++t) {
        const int pick = pair.pf_pick(0);
        const auto mine = pair.step_side(0, pick);
        const auto theirs = pair.step_side(1, pick);
        if (t < 40) {
            continue;  // let the windows fill
        }
        const auto tp_cmp = reward::compare_metrics(mine.window_throughput,
                                                    theirs.window_throughput, 0.01);
        const auto jfi_cmp = reward::compare_metrics(mine.jfi, theirs.jfi, 0.01);
        CHECK(tp_cmp == reward::Comparison::EQUAL);
        CHECK(jfi_cmp == reward::Comparison::EQUAL);
        CHECK(reward::expert_reward(tp_cmp, jfi_cmp, w)
              == doctest::Approx(0.5 * (0.9 + 1.15)));
    }
}

TEST_CASE("evaluating PF against its own twin gives exactly zero differences") {
    RunConfig cfg = tiny_config();
    cfg.eval_window_ttis = 400;
    ThreadPool pool(1);
    const auto rec = evaluate_policy_vs_pf(pf_policy(), cfg, 17, 0, pool);
    CHECK(rec.update_count == 0);
    CHECK(rec.per_seed.size() == 2);
    for (const auto& sd : rec.per_seed) {
        CHECK(sd.tp_diff == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(sd.jfi_diff == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK(rec.tp_diff == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rec.jfi_diff == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("eval differences carry the expected signs for the fixed baselines") {
    RunConfig cfg = tiny_config();
    cfg.sim.n_ue = 5;
    cfg.eval_window_ttis = 1000;
    cfg.n_eval_seeds = 3;
    ThreadPool pool(1);
    const auto maxci = evaluate_policy_vs_pf(max_ci_policy(), cfg, 17, 0, pool);
    CHECK(maxci.tp_diff >= 0.0);
    CHECK(maxci.jfi_diff <= 0.0);
    const auto rr = evaluate_policy_vs_pf(round_robin_policy(), cfg, 17, 0, pool);
    CHECK(rr.tp_diff <= 0.0);
}

TEST_CASE("evaluation never mutates the agent") {
    RunConfig cfg = tiny_config();
    drl::Hyperparams hp = cfg.hp;
    drl::DdpgAgent agent(cfg.sim.n_ue, hp, 5);
    const std::uint64_t before = agent.param_hash();
    ThreadPool pool(1);
    evaluate_vs_pf(agent, cfg, 3, 0, pool);
    CHECK(agent.param_hash() == before);
}

TEST_CASE("training runs hit every scheduled eval milestone") {
    RunConfig cfg = tiny_config();
    cfg.total_updates = 7;
    cfg.eval_every = 3;
    cfg.hp.updates_per_eval = 3;
    ThreadPool pool(1);
    const auto out = run_expert(cfg, 11, pool);
    CHECK(out.log.updates_done == 7);
    REQUIRE(out.log.evals.size() == 4);
    CHECK(out.log.evals[0].update_count == 0);
    CHECK(out.log.evals[1].update_count == 3);
    CHECK(out.log.evals[2].update_count == 6);
    CHECK(out.log.evals[3].update_count == 7);
    CHECK(out.agent.update_count() == 7);
    CHECK_FALSE(out.log.reward_history.empty());
    for (double r : out.log.reward_history) {
        CHECK(std::isfinite(r));
    }
}

TEST_CASE("zero updates still produces the initial evaluation") {
    RunConfig cfg = tiny_config();
    cfg.total_updates = 0;
    ThreadPool pool(1);
    const auto out = run_direct(cfg, 4, pool);
    CHECK(out.log.updates_done == 0);
    REQUIRE(out.log.evals.size() == 1);
    CHECK(out.log.evals[0].update_count == 0);
}

TEST_CASE("a training run is reproducible from its seed") {
    RunConfig cfg = tiny_config();
    ThreadPool pool(1);
    const auto a = run_expert(cfg, 31, pool);
    const auto b = run_expert(cfg, 31, pool);
    CHECK(a.agent.param_hash() == b.agent.param_hash());
    REQUIRE(a.log.evals.size() == b.log.evals.size());
    for (std::size_t i = 0; i < a.log.evals.size(); ++i) {
        CHECK(a.log.evals[i].tp_diff == b.log.evals[i].tp_diff);
        CHECK(a.log.evals[i].jfi_diff == b.log.evals[i].jfi_diff);
    }
    CHECK(a.log.reward_history == b.log.reward_history);

    const auto c = run_expert(cfg, 32, pool);
    CHECK(a.agent.param_hash() != c.agent.param_hash());
}

TEST_CASE("dual training alternates and trains both agents to the target") {
    RunConfig cfg = tiny_config();
    cfg.method = Method::DUAL;
    cfg.total_updates = 4;
    cfg.dual_phase_updates = 2;
    cfg.eval_every = 4;
    cfg.hp.updates_per_eval = 4;
    ThreadPool pool(1);
    const auto out = run_dual(cfg, 8, pool);
    CHECK(out.agent_a.update_count() == 4);
    CHECK(out.agent_b.update_count() == 4);
    CHECK(out.agent_a.param_hash() != out.agent_b.param_hash());
    CHECK(out.log_a.label == "dual/agent0");
    CHECK(out.log_b.label == "dual/agent1");
    CHECK(out.log_a.evals.front().update_count == 0);
    CHECK(out.log_a.evals.back().update_count == 4);
    CHECK(out.log_b.evals.back().update_count == 4);
}

TEST_CASE("result emission writes the CSV and the plot it derives") {
    TrainingLog log1;
    log1.run_seed = 3;
    log1.label = "direct";
    log1.evals = {{0, -0.5, 0.01, {}}, {50, -0.2, 0.02, {}}, {100, 0.1, 0.005, {}}};
    log1.reward_history = {0.5, 0.7, 0.9};
    TrainingLog log2 = log1;
    log2.run_seed = 4;
    log2.evals[2].tp_diff = 0.3;

    const std::string dir = "emit_test_out";
    fs::remove_all(dir);
    emit_results({log1, log2}, dir, "results");

    std::ifstream csv(dir + "/results.csv");
    REQUIRE(csv.good());
    std::string line;
    std::getline(csv, line);
    CHECK(line == "update_count,tp_diff,jfi_diff,seed");
    int rows = 0;
    while (std::getline(csv, line)) {
        if (!line.empty()) {
            ++rows;
        }
    }
    CHECK(rows == 6);

    std::ifstream svg(dir + "/results.svg");
    REQUIRE(svg.good());
    const std::string svg_body((std::istreambuf_iterator<char>(svg)),
                               std::istreambuf_iterator<char>());
    CHECK(svg_body.find("<svg") != std::string::npos);
    CHECK(svg_body.find("polyline") != std::string::npos);
    CHECK(fs::exists(dir + "/results_rewards.csv"));

    // re-emitting is byte-stable
    std::ifstream before(dir + "/results.csv");
    const std::string bytes_before((std::istreambuf_iterator<char>(before)),
                                   std::istreambuf_iterator<char>());
    before.close();
    emit_results({log1, log2}, dir, "results");
    std::ifstream after(dir + "/results.csv");
    const std::string bytes_after((std::istreambuf_iterator<char>(after)),
                                  std::istreambuf_iterator<char>());
    CHECK(bytes_before == bytes_after);

    CHECK_THROWS_AS(emit_results({}, dir, "results"), ConfigError);
    TrainingLog empty_log;
    empty_log.label = "direct";
    CHECK_THROWS_AS(emit_results({empty_log}, dir, "results"), ConfigError);

    const std::string bad_csv = dir + "/bad.csv";
    write_temp(bad_csv, "wrong,header,entirely\n1,2,3\n");
    CHECK_THROWS_AS(write_plot_svg(bad_csv, dir + "/bad.svg"), ConfigError);

    fs::remove_all(dir);
}
