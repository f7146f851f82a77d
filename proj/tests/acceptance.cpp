// Acceptance gate: one test case per shipped guarantee, each printing a
// single "criterion NN <label>: PASS|FAIL" line. The unit suites pin the
// fine-grained behavior; these pin the headline numbers end to end.
//
// Run through the CLI wrapper: --cli=<path to the schedrl binary> is
// consumed here (the determinism case shells out to it); every other
// argument is handed to doctest.

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pf_oracle.hpp"
#include "schedrl/drl/agent.hpp"
#include "schedrl/drl/mlp.hpp"
#include "schedrl/drl/replay.hpp"
#include "schedrl/env/environment.hpp"
#include "schedrl/harness/run_config.hpp"
#include "schedrl/harness/thread_pool.hpp"
#include "schedrl/harness/trainer.hpp"
#include "schedrl/reward/reward.hpp"
#include "schedrl/rng.hpp"
#include "schedrl/sched/metrics.hpp"
#include "schedrl/sched/policies.hpp"

using namespace schedrl;

namespace {

std::string g_cli_path;

// Accumulates the criterion verdict while still reporting each clause
// through doctest, so a red run shows exactly which clause broke.
#define REQ(cond)                                      \
    do {                                               \
        const bool req_ok_ = static_cast<bool>(cond);  \
        CHECK_MESSAGE(req_ok_, #cond);                 \
        ok = ok && req_ok_;                            \
    } while (0)

void report(int number, const char* label, bool ok) {
    std::printf("criterion %02d %s: %s\n", number, label, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
}

bool near(double x, double y, double tol) { return std::abs(x - y) <= tol; }

int pool_size(const harness::RunConfig& cfg) {
    if (cfg.threads > 0) {
        return cfg.threads;
    }
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) {
        hw = 1;
    }
    return std::min(cfg.n_envs, hw);
}

// Shared shape of the desk-scale training runs: 3 UEs, 2x64 nets, 8
// mirrored env pairs, eval on 5 held-out seeds over 2000 TTIs.
harness::RunConfig desk_config() {
    harness::RunConfig cfg;
    cfg.n_envs = 8;
    cfg.sim.n_ue = 3;
    cfg.hp.hidden_units = 64;
    cfg.hp.hidden_layers = 2;
    cfg.hp.gamma = 0.9;
    cfg.hp.noise_scale = 1.0;
    cfg.hp.noise_decay = 0.999;
    cfg.eval_every = 50;
    cfg.hp.updates_per_eval = 50;
    cfg.window_len = 10;
    cfg.episode_len_ttis = 1000;
    cfg.eval_window_ttis = 2000;
    cfg.n_eval_seeds = 5;
    cfg.compare_rel_tol = 0.05;
    return cfg;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("criterion 01 formula oracles") {
    bool ok = true;
    const double tol = 1e-9;

    // Exponential throughput tracker: one update from T=5 with 15 delivered
    // at window 10 lands exactly on 0.9*5 + 0.1*15.
    sched::ThroughputTracker tracker(1, 10, 5.0);
    tracker.update(std::vector<double>{15.0});
    REQ(near(tracker.avg()[0], 6.0, tol));

    REQ(near(sched::jain_index(std::vector<double>{1.0, 2.0, 3.0}), 36.0 / 42.0, tol));

    reward::RewardSnapshot snap;
    snap.inst_throughput = 0.5;
    snap.jfi = 0.8;
    REQ(near(reward::direct_reward(snap, {1.0, 5.0}, 1.0), 4.5, tol));

    using reward::Comparison;
    const Comparison L = Comparison::LESS;
    const Comparison E = Comparison::EQUAL;
    const Comparison G = Comparison::GREATER;

    // Winner-take lookup at alpha 0.85 / beta 1.05; EQUAL pays nothing.
    const reward::RewardWeights dual_w{0.85, 1.05};
    REQ(near(reward::dual_reward(G, G, dual_w), 1.90, tol));
    REQ(near(reward::dual_reward(G, L, dual_w), 0.85, tol));
    REQ(near(reward::dual_reward(L, G, dual_w), 1.05, tol));
    REQ(near(reward::dual_reward(L, L, dual_w), 0.0, tol));
    REQ(near(reward::dual_reward(G, E, dual_w), 0.85, tol));
    REQ(near(reward::dual_reward(E, G, dual_w), 1.05, tol));
    REQ(near(reward::dual_reward(E, E, dual_w), 0.0, tol));

    // Reference lookup at alpha 0.9 / beta 1.15; ties pay half credit.
    const reward::RewardWeights exp_w{0.9, 1.15};
    REQ(near(reward::expert_reward(G, G, exp_w), 2.05, tol));
    REQ(near(reward::expert_reward(G, E, exp_w), 1.475, tol));
    REQ(near(reward::expert_reward(G, L, exp_w), 0.9, tol));
    REQ(near(reward::expert_reward(E, G, exp_w), 1.6, tol));
    REQ(near(reward::expert_reward(E, E, exp_w), 1.025, tol));
    REQ(near(reward::expert_reward(E, L, exp_w), 0.45, tol));
    REQ(near(reward::expert_reward(L, G, exp_w), 1.15, tol));
    REQ(near(reward::expert_reward(L, E, exp_w), 0.575, tol));
    REQ(near(reward::expert_reward(L, L, exp_w), 0.0, tol));

    REQ(near(sched::kelly_aggregate_change(std::vector<double>{1.0, 1.0},
                                           std::vector<double>{2.0, 0.5}),
             0.5, tol));

    const double e1 = std::exp(1.0);
    REQ(near(sched::sum_log_utility(std::vector<double>{e1, e1 * e1}), 3.0, tol));

    report(1, "formula oracles", ok);
    CHECK(ok);
}

TEST_CASE("criterion 02 pf correctness") {
    bool ok = true;

    // The pick only depends on the ratios I_n/T_n, so rescaling either
    // vector by any positive constant must not move it.
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_index(7));
        std::vector<double> inst(static_cast<std::size_t>(n));
        std::vector<double> avg(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            inst[static_cast<std::size_t>(i)] = rng.uniform(0.1, 9.0);
            avg[static_cast<std::size_t>(i)] = rng.uniform(0.1, 9.0);
        }
        const int pick = sched::pf_select(inst, avg);
        const double c1 = rng.uniform(0.01, 100.0);
        const double c2 = rng.uniform(0.01, 100.0);
        auto inst2 = inst;
        auto avg2 = avg;
        for (int i = 0; i < n; ++i) {
            inst2[static_cast<std::size_t>(i)] *= c1;
            avg2[static_cast<std::size_t>(i)] *= c2;
        }
        if (sched::pf_select(inst2, avg) != pick || sched::pf_select(inst, avg2) != pick) {
            REQ(false);
            break;
        }
    }

    // Exact metric ties resolve to the lowest index, every time.
    const std::vector<double> tied_inst{2.0, 4.0, 2.0};
    const std::vector<double> tied_avg{1.0, 2.0, 1.0};
    for (int i = 0; i < 10; ++i) {
        REQ(sched::pf_select(tied_inst, tied_avg) == 0);
    }

    // Exhaustive 3^12 search: greedy PF recovers at least 98% of the
    // utility gap between round robin and the best schedule.
    double min_closure = 1.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto f = pf_oracle::make_fixture(seed, 3, 12);
        const double closure = pf_oracle::pf_gap_closure(f);
        min_closure = std::min(min_closure, closure);
        REQ(closure <= 1.0 + 1e-9);
    }
    std::printf("  pf gap closure over 20 instances: min %.4f\n", min_closure);
    REQ(min_closure >= 0.98);

    report(2, "pf correctness", ok);
    CHECK(ok);
}

TEST_CASE("criterion 03 scheduler ordering") {
    bool ok = true;
    const long horizon = 100000;

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        double tp[3] = {0.0, 0.0, 0.0};
        double jfi[3] = {0.0, 0.0, 0.0};
        for (int k = 0; k < 3; ++k) {
            env::SimConfig sim;
            env::Environment e(sim);
            e.reset(seed);
            std::vector<double> total(static_cast<std::size_t>(sim.n_ue), 0.0);
            for (long t = 0; t < horizon; ++t) {
                int pick = 0;
                if (k == 0) {
                    pick = sched::max_ci_select(e.inst_rates());
                } else if (k == 1) {
                    pick = sched::pf_select(e.inst_rates(), e.tracker().avg());
                } else {
                    pick = sched::round_robin_select(t, sim.n_ue);
                }
                const auto [res, obs] = e.step(pick);
                total[static_cast<std::size_t>(res.scheduled_ue)] += res.delivered_bits;
            }
            tp[k] = std::accumulate(total.begin(), total.end(), 0.0);
            jfi[k] = sched::jain_index(total);
        }
        REQ(tp[0] >= tp[1]);
        REQ(tp[1] >= tp[2]);
        REQ(jfi[1] >= jfi[0]);
    }

    // Symmetric channels: every UE's PF scheduling share sits at 1/5
    // within two points.
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        env::SimConfig sim;
        sim.avg_snr_min_db = 10.0;
        sim.avg_snr_max_db = 10.0;
        env::Environment e(sim);
        e.reset(seed);
        std::vector<long> picks(static_cast<std::size_t>(sim.n_ue), 0);
        for (long t = 0; t < horizon; ++t) {
            const int pick = sched::pf_select(e.inst_rates(), e.tracker().avg());
            ++picks[static_cast<std::size_t>(pick)];
            e.step(pick);
        }
        for (int n = 0; n < sim.n_ue; ++n) {
            const double share =
                static_cast<double>(picks[static_cast<std::size_t>(n)]) / static_cast<double>(horizon);
            REQ(share >= 0.18);
            REQ(share <= 0.22);
        }
    }

    report(3, "scheduler ordering", ok);
    CHECK(ok);
}

TEST_CASE("criterion 04 link adaptation") {
    bool ok = true;
    const long horizon = 100000;

    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        env::SimConfig sim;
        sim.avg_snr_min_db = 10.0;
        sim.avg_snr_max_db = 10.0;
        env::Environment e(sim);
        e.reset(seed);
        long nacks = 0;
        for (long t = 0; t < horizon; ++t) {
            const auto [res, obs] = e.step(0);
            if (!res.ack) {
                ++nacks;
            }
        }
        const double bler = static_cast<double>(nacks) / static_cast<double>(horizon);
        std::printf("  realized BLER seed %llu: %.4f\n",
                    static_cast<unsigned long long>(seed), bler);
        REQ(bler >= 0.08);
        REQ(bler <= 0.12);
    }

    report(4, "link adaptation", ok);
    CHECK(ok);
}

namespace {

double probe_loss(const drl::Mlp& net, const std::vector<double>& x,
                  const std::vector<double>& dy) {
    const auto y = net.forward(x);
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        s += dy[i] * y[i];
    }
    return s;
}

double rel_err(double analytic, double numeric) {
    return std::abs(analytic - numeric) /
           std::max({1.0, std::abs(analytic), std::abs(numeric)});
}

}  // namespace

TEST_CASE("criterion 05 gradient checks") {
    bool ok = true;
    using drl::Mlp;
    using drl::OutputActivation;

    Rng rng(2024);
    const double h = 1e-6;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int in = 2 + static_cast<int>(rng.uniform_index(4));
        const int hidden = 3 + static_cast<int>(rng.uniform_index(6));
        const int out = 1 + static_cast<int>(rng.uniform_index(4));
        const auto activation =
            trial % 2 == 0 ? OutputActivation::SIMPLEX : OutputActivation::IDENTITY;
        std::vector<int> sizes{in, hidden, out};
        if (trial % 3 == 0) {
            sizes = {in, hidden, hidden, out};
        }
        Mlp net(sizes, activation);
        net.init(rng);

        std::vector<double> x(static_cast<std::size_t>(in));
        for (auto& v : x) {
            v = rng.uniform(-1.5, 1.5);
        }
        std::vector<double> dy(static_cast<std::size_t>(out));
        for (auto& v : dy) {
            v = rng.uniform(-1.0, 1.0);
        }

        Mlp::Cache cache;
        net.forward(x, &cache);
        const auto grads = net.backward(cache, dy);

        for (int l = 0; l < net.n_layers(); ++l) {
            auto& w = net.weights()[static_cast<std::size_t>(l)];
            for (std::size_t i = 0; i < w.size(); ++i) {
                const double saved = w[i];
                w[i] = saved + h;
                const double up = probe_loss(net, x, dy);
                w[i] = saved - h;
                const double down = probe_loss(net, x, dy);
                w[i] = saved;
                worst = std::max(worst, rel_err(grads.weights[static_cast<std::size_t>(l)][i],
                                                (up - down) / (2 * h)));
            }
            auto& b = net.biases()[static_cast<std::size_t>(l)];
            for (std::size_t i = 0; i < b.size(); ++i) {
                const double saved = b[i];
                b[i] = saved + h;
                const double up = probe_loss(net, x, dy);
                b[i] = saved - h;
                const double down = probe_loss(net, x, dy);
                b[i] = saved;
                worst = std::max(worst, rel_err(grads.biases[static_cast<std::size_t>(l)][i],
                                                (up - down) / (2 * h)));
            }
        }
        for (std::size_t i = 0; i < x.size(); ++i) {
            auto xp = x;
            xp[i] += h;
            const double up = probe_loss(net, xp, dy);
            xp[i] = x[i] - h;
            const double down = probe_loss(net, xp, dy);
            worst = std::max(worst, rel_err(grads.input[i], (up - down) / (2 * h)));
        }
    }
    std::printf("  worst gradient relative error over 20 nets: %.3e\n", worst);
    REQ(worst < 1e-4);

    report(5, "gradient checks", ok);
    CHECK(ok);
}

TEST_CASE("criterion 06 ddpg sanity") {
    bool ok = true;
    using drl::DdpgAgent;
    using drl::Transition;

    // With gamma 0 the critic target is the raw reward, so training on one
    // transition must regress its Q to r.
    {
        drl::Hyperparams hp;
        hp.gamma = 0.0;
        hp.batch_size = 1;
        hp.hidden_units = 16;
        hp.hidden_layers = 1;
        DdpgAgent agent(2, hp, 7);

        Transition t;
        t.s = {0.3, 0.9, 0.5, 0.2};
        t.a = {0.7, 0.3};
        t.r = 0.7;
        t.s_next = {0.4, 0.8, 0.55, 0.25};
        const std::vector<const Transition*> batch{&t};
        for (int i = 0; i < 6000; ++i) {
            agent.train_step(batch);
        }
        std::vector<double> sa = t.s;
        sa.insert(sa.end(), t.a.begin(), t.a.end());
        const double q = agent.critic().forward(sa)[0];
        std::printf("  gamma-zero critic after 6000 steps: %.4f (target 0.7)\n", q);
        REQ(std::abs(q - 0.7) < 1e-2);
    }

    // With the critic pinned down by a vanishing learning rate, actor
    // steps may only push the critic's score of the actor's actions up.
    {
        drl::Hyperparams hp;
        hp.actor_lr = 1e-4;
        hp.critic_lr = 1e-12;
        hp.gamma = 0.9;
        hp.batch_size = 8;
        hp.hidden_units = 16;
        hp.hidden_layers = 1;
        DdpgAgent agent(2, hp, 11);

        Rng rng(17);
        std::vector<Transition> ts(8);
        for (auto& t : ts) {
            t.s.resize(4);
            t.s_next.resize(4);
            for (auto& v : t.s) {
                v = rng.uniform(0.0, 1.0);
            }
            for (auto& v : t.s_next) {
                v = rng.uniform(0.0, 1.0);
            }
            t.a = {0.5, 0.5};
            t.r = rng.uniform(0.0, 1.0);
        }
        std::vector<const Transition*> batch;
        for (const auto& t : ts) {
            batch.push_back(&t);
        }

        const auto mean_q = [&agent, &ts]() {
            Rng greedy_rng(1);
            double s = 0.0;
            for (const auto& t : ts) {
                const auto a = agent.select_action(t.s, false, greedy_rng);
                std::vector<double> sa = t.s;
                sa.insert(sa.end(), a.begin(), a.end());
                s += agent.critic().forward(sa)[0];
            }
            return s / static_cast<double>(ts.size());
        };

        const double before = mean_q();
        for (int i = 0; i < 200; ++i) {
            agent.train_step(batch);
        }
        const double after = mean_q();
        std::printf("  frozen-critic actor objective: %.6f -> %.6f\n", before, after);
        REQ(after >= before - 1e-6);
    }

    // Soft update lands every target parameter exactly on the convex
    // combination tau*live + (1-tau)*target.
    {
        using drl::Mlp;
        Rng rng(23);
        Mlp live({4, 8, 3}, drl::OutputActivation::IDENTITY);
        Mlp target({4, 8, 3}, drl::OutputActivation::IDENTITY);
        live.init(rng);
        target.init(rng);
        const Mlp target_before = target;
        const double tau = 0.25;
        drl::soft_update(live, target, tau);
        for (int l = 0; l < live.n_layers(); ++l) {
            const auto lu = static_cast<std::size_t>(l);
            for (std::size_t i = 0; i < live.weights()[lu].size(); ++i) {
                const double lo = std::min(live.weights()[lu][i], target_before.weights()[lu][i]);
                const double hi = std::max(live.weights()[lu][i], target_before.weights()[lu][i]);
                const double expect =
                    tau * live.weights()[lu][i] + (1.0 - tau) * target_before.weights()[lu][i];
                if (target.weights()[lu][i] < lo - 1e-12 || target.weights()[lu][i] > hi + 1e-12 ||
                    std::abs(target.weights()[lu][i] - expect) > 1e-12) {
                    REQ(false);
                }
            }
            for (std::size_t i = 0; i < live.biases()[lu].size(); ++i) {
                const double expect =
                    tau * live.biases()[lu][i] + (1.0 - tau) * target_before.biases()[lu][i];
                if (std::abs(target.biases()[lu][i] - expect) > 1e-12) {
                    REQ(false);
                }
            }
        }
        REQ(true);
    }

    report(6, "ddpg sanity", ok);
    CHECK(ok);
}

TEST_CASE("criterion 07 expert learning") {
    bool ok = true;

    harness::RunConfig cfg = desk_config();
    cfg.method = harness::Method::EXPERT;
    cfg.total_updates = 4000;
    cfg.weights = {0.9, 1.15};
    cfg.validate();
    harness::ThreadPool pool(pool_size(cfg));

    int seeds_within = 0;
    double first_sum = 0.0;
    double last_sum = 0.0;
    for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto out = harness::run_expert(cfg, seed, pool);
        const auto& fin = out.log.evals.back();
        std::printf("  seed %llu final tp_diff %+.4f jfi_diff %+.4f\n",
                    static_cast<unsigned long long>(seed), fin.tp_diff, fin.jfi_diff);
        if (std::abs(fin.tp_diff) <= 0.10 && std::abs(fin.jfi_diff) <= 0.10) {
            ++seeds_within;
        }

        const auto& rh = out.log.reward_history;
        REQ(out.log.updates_done == cfg.total_updates);
        REQ(rh.size() >= static_cast<std::size_t>(1000));
        const std::size_t warmup = rh.size() - static_cast<std::size_t>(out.log.updates_done);
        first_sum += std::accumulate(rh.begin() + static_cast<std::ptrdiff_t>(warmup),
                                     rh.begin() + static_cast<std::ptrdiff_t>(warmup + 500), 0.0) /
                     500.0;
        last_sum += std::accumulate(rh.end() - 500, rh.end(), 0.0) / 500.0;
    }
    std::printf("  seeds within +-0.10: %d of 3; pooled reward mean first/last 500: %.4f / %.4f\n",
                seeds_within, first_sum / 3.0, last_sum / 3.0);
    REQ(seeds_within >= 2);
    REQ(last_sum >= 1.2 * first_sum);

    report(7, "expert learning", ok);
    CHECK(ok);
}

namespace {

// Shared fixture for the direct-reward runs: a narrow average-SNR band
// keeps the fairness index naturally high, so the throughput/fairness
// trade the reward weights encode is visible in the diffs.
harness::RunConfig direct_config() {
    harness::RunConfig cfg = desk_config();
    cfg.method = harness::Method::DIRECT;
    cfg.total_updates = 4000;
    cfg.sim.avg_snr_min_db = 8.0;
    cfg.sim.avg_snr_max_db = 12.0;
    cfg.window_len = 100;
    cfg.hp.gamma = 0.2;
    cfg.hp.batch_size = 256;
    cfg.hp.critic_lr = 3e-3;
    cfg.hp.tau = 0.01;
    return cfg;
}

}  // namespace

TEST_CASE("criterion 08 direct learning") {
    bool ok = true;

    harness::RunConfig cfg5 = direct_config();
    cfg5.weights = {1.0, 5.0};
    cfg5.validate();
    harness::ThreadPool pool(pool_size(cfg5));

    const std::vector<std::uint64_t> seeds{1, 2, 3};
    int seeds_passing = 0;
    double jfi5_sum = 0.0;
    for (const std::uint64_t seed : seeds) {
        const auto out = harness::run_direct(cfg5, seed, pool);
        const auto& fin = out.log.evals.back();
        std::printf("  beta/alpha 5 seed %llu: tp_diff %+.4f jfi_diff %+.4f\n",
                    static_cast<unsigned long long>(seed), fin.tp_diff, fin.jfi_diff);
        if (fin.tp_diff >= -0.05 && fin.jfi_diff <= 0.02) {
            ++seeds_passing;
        }
        jfi5_sum += fin.jfi_diff;
    }
    REQ(seeds_passing >= 2);

    harness::RunConfig cfg10 = direct_config();
    cfg10.weights = {1.0, 10.0};
    cfg10.validate();
    double jfi10_sum = 0.0;
    for (const std::uint64_t seed : seeds) {
        const auto out = harness::run_direct(cfg10, seed, pool);
        const auto& fin = out.log.evals.back();
        std::printf("  beta/alpha 10 seed %llu: tp_diff %+.4f jfi_diff %+.4f\n",
                    static_cast<unsigned long long>(seed), fin.tp_diff, fin.jfi_diff);
        jfi10_sum += fin.jfi_diff;
    }
    const double jfi5 = jfi5_sum / 3.0;
    const double jfi10 = jfi10_sum / 3.0;
    std::printf("  mean jfi_diff: beta 5 %+.4f, beta 10 %+.4f\n", jfi5, jfi10);
    // Doubling the fairness weight must not pull fairness down; both runs
    // already sit at the fairness ceiling, so equality within a small band
    // is the expected shape.
    REQ(jfi10 >= jfi5 - 0.02);

    report(8, "direct learning", ok);
    CHECK(ok);
}

TEST_CASE("criterion 09 dual learning") {
    bool ok = true;

    harness::RunConfig cfg = desk_config();
    cfg.method = harness::Method::DUAL;
    cfg.total_updates = 2000;
    cfg.dual_phase_updates = 200;
    cfg.compare_rel_tol = 0.01;
    cfg.hp.gamma = 0.85;
    cfg.weights = {0.85, 1.05};
    cfg.validate();
    harness::ThreadPool pool(pool_size(cfg));

    // The trainer asserts the freeze and mirror invariants on every phase;
    // finishing the full budget is the evidence they held throughout.
    const auto out = harness::run_dual(cfg, 1, pool);
    REQ(out.log_a.updates_done == cfg.total_updates);
    REQ(out.log_b.updates_done == cfg.total_updates);

    for (const auto* log : {&out.log_a, &out.log_b}) {
        const auto& fin = log->evals.back();
        std::printf("  %s final tp_diff %+.4f jfi_diff %+.4f\n", log->label.c_str(),
                    fin.tp_diff, fin.jfi_diff);
        REQ(std::abs(fin.tp_diff) <= 0.15);
        REQ(std::abs(fin.jfi_diff) <= 0.15);
    }

    report(9, "dual learning", ok);
    CHECK(ok);
}

TEST_CASE("criterion 10 determinism") {
    bool ok = true;

    REQ(!g_cli_path.empty());
    if (g_cli_path.empty()) {
        report(10, "determinism", false);
        CHECK(ok);
        return;
    }

    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "schedrl_determinism";
    fs::remove_all(root);
    fs::create_directories(root);

    const fs::path cfg_path = root / "run.cfg";
    {
        std::ofstream out(cfg_path);
        out << "method = expert\n"
               "n_envs = 4\n"
               "total_updates = 60\n"
               "eval_every = 20\n"
               "seeds = 5\n"
               "threads = 2\n"
               "sim.n_ue = 3\n"
               "hp.hidden_units = 32\n"
               "hp.hidden_layers = 1\n"
               "hp.noise_scale = 1.0\n"
               "window_len = 10\n"
               "eval_window_ttis = 500\n"
               "n_eval_seeds = 2\n";
    }

    for (const char* run : {"run1", "run2"}) {
        const std::string cmd = "\"" + g_cli_path + "\" train --method expert --config " +
                                cfg_path.string() + " --out " + (root / run).string() +
                                " > /dev/null 2>&1";
        REQ(std::system(cmd.c_str()) == 0);
    }

    const std::string results1 = read_file(root / "run1" / "results.csv");
    const std::string results2 = read_file(root / "run2" / "results.csv");
    REQ(!results1.empty());
    REQ(results1.rfind("update_count,tp_diff,jfi_diff,seed\n", 0) == 0);
    REQ(results1 == results2);

    const std::string rewards1 = read_file(root / "run1" / "results_rewards.csv");
    const std::string rewards2 = read_file(root / "run2" / "results_rewards.csv");
    REQ(!rewards1.empty());
    REQ(rewards1 == rewards2);

    fs::remove_all(root);

    report(10, "determinism", ok);
    CHECK(ok);
}

int main(int argc, char** argv) {
    std::vector<char*> doctest_args;
    for (int i = 0; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg.rfind("--cli=", 0) == 0) {
            g_cli_path = arg.substr(6);
        } else {
            doctest_args.push_back(argv[i]);
        }
    }
    doctest::Context context(static_cast<int>(doctest_args.size()), doctest_args.data());
    return context.run();
}
