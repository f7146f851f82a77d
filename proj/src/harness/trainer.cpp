#include "schedrl/harness/trainer.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <utility>

#include "schedrl/errors.hpp"
#include "schedrl/sched/policies.hpp"

namespace schedrl::harness {

namespace {

std::uint64_t fnv1a_double(std::uint64_t h, double x) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &x, sizeof(double));
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string sanitize_label(std::string label) {
    std::replace(label.begin(), label.end(), '/', '-');
    return label;
}

void save_abort_checkpoint(const drl::DdpgAgent& agent, const RunConfig& cfg,
                           const std::string& label, std::uint64_t run_seed) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::string path = cfg.out_dir + "/abort_" + sanitize_label(label) + "_seed" +
                             std::to_string(run_seed) + ".ckpt";
    agent.save(path);
}

}  // namespace

env::TtiObservation normalize_state(const env::TtiObservation& raw) {
    check_contract(!raw.inst_rate.empty() && raw.inst_rate.size() == raw.avg_rate.size(),
                   "normalize_state: malformed observation");
    const double max_i = *std::max_element(raw.inst_rate.begin(), raw.inst_rate.end());
    const double max_t = *std::max_element(raw.avg_rate.begin(), raw.avg_rate.end());
    check_contract(max_i > 0.0, "normalize_state: no UE has a positive instantaneous rate");
    check_contract(max_t > 0.0, "normalize_state: no UE has a positive average rate");
    env::TtiObservation out = raw;
    for (double& v : out.inst_rate) v /= max_i;
    for (double& v : out.avg_rate) v /= max_t;
    return out;
}

PolicyFn pf_policy() {
    return [](long, const env::TtiObservation& obs) {
        return sched::pf_select(obs.inst_rate, obs.avg_rate);
    };
}

PolicyFn max_ci_policy() {
    return [](long, const env::TtiObservation& obs) {
        return sched::max_ci_select(obs.inst_rate);
    };
}

PolicyFn round_robin_policy() {
    return [](long tti, const env::TtiObservation& obs) {
        return sched::round_robin_select(tti, static_cast<int>(obs.inst_rate.size()));
    };
}

PolicyFn agent_policy(const drl::DdpgAgent& agent) {
    return [&agent](long, const env::TtiObservation& obs) {
        Rng unused(0);  // greedy selection draws nothing
        const auto state = normalize_state(obs).flatten();
        return drl::argmax_action(agent.select_action(state, false, unused));
    };
}

MirroredEnvPair::MirroredEnvPair(const env::SimConfig& sim, int window_len,
                                 std::uint64_t episode_seed, std::uint64_t noise_seed)
    : noise_rng_(noise_seed) {
    envs_.reserve(2);
    windows_.reserve(2);
    obs_.reserve(2);
    for (int side = 0; side < 2; ++side) {
        envs_.emplace_back(sim);
        obs_.push_back(envs_.back().reset(episode_seed));
        windows_.emplace_back(sim.n_ue, window_len);
    }
}

reward::RewardSnapshot MirroredEnvPair::step_side(int side, int scheduled_ue) {
    auto& env = envs_.at(static_cast<std::size_t>(side));
    auto [result, next_obs] = env.step(scheduled_ue);
    std::vector<double> delivered(static_cast<std::size_t>(env.config().n_ue), 0.0);
    delivered[static_cast<std::size_t>(result.scheduled_ue)] = result.delivered_bits;
    auto& win = windows_[static_cast<std::size_t>(side)];
    win.add(delivered);
    obs_[static_cast<std::size_t>(side)] = std::move(next_obs);
    return {result.delivered_bits, win.throughput_sum(), win.jfi()};
}

const env::TtiObservation& MirroredEnvPair::obs(int side) const {
    return obs_.at(static_cast<std::size_t>(side));
}

int MirroredEnvPair::pf_pick(int side) const {
    const auto& o = obs(side);
    return sched::pf_select(o.inst_rate, o.avg_rate);
}

const env::Environment& MirroredEnvPair::environment(int side) const {
    return envs_.at(static_cast<std::size_t>(side));
}

const sched::WindowedMetrics& MirroredEnvPair::window(int side) const {
    return windows_.at(static_cast<std::size_t>(side));
}

std::uint64_t MirroredEnvPair::channel_fingerprint(int side) const {
    const auto& env = environment(side);
    std::uint64_t h = 0xCBF29CE484222325ULL;
    h = fnv1a_double(h, static_cast<double>(env.tti()));
    for (int n = 0; n < env.config().n_ue; ++n) {
        const auto& ch = env.ue(n).channel;
        h = fnv1a_double(h, ch.fading_power);
        h = fnv1a_double(h, ch.sinr_true_db);
        h = fnv1a_double(h, ch.sinr_reported_db);
    }
    return h;
}

void MirroredEnvPair::check_mirror() const {
    check_contract(envs_[0].tti() == envs_[1].tti(),
                   "mirrored envs fell out of lockstep");
    check_contract(channel_fingerprint(0) == channel_fingerprint(1),
                   "mirrored envs observed different channel streams");
}

EvalRecord evaluate_policy_vs_pf(const PolicyFn& policy, const RunConfig& cfg,
                                 std::uint64_t run_seed, long update_count,
                                 ThreadPool& pool) {
    const int n_ue = cfg.sim.n_ue;
    std::vector<SeedDiff> per_seed(static_cast<std::size_t>(cfg.n_eval_seeds));
    pool.parallel_for(cfg.n_eval_seeds, [&](int j) {
        const std::uint64_t episode_seed = derive_seed(run_seed, kTagEvalEpisode, static_cast<std::uint64_t>(j));
        MirroredEnvPair pair(cfg.sim, cfg.window_len, episode_seed,
                             derive_seed(run_seed, kTagActionNoise, 0x8000u + static_cast<std::uint64_t>(j)));
        std::vector<double> total_policy(static_cast<std::size_t>(n_ue), 0.0);
        std::vector<double> total_pf(static_cast<std::size_t>(n_ue), 0.0);
        for (int t = 0; t < cfg.eval_window_ttis; ++t) {
            const int pick = policy(pair.environment(0).tti(), pair.obs(0));
            check_contract(pick >= 0 && pick < n_ue, "eval policy picked an out-of-range UE");
            const auto snap_policy = pair.step_side(0, pick);
            const int pf = pair.pf_pick(1);
            const auto snap_pf = pair.step_side(1, pf);
            total_policy[static_cast<std::size_t>(pick)] += snap_policy.inst_throughput;
            total_pf[static_cast<std::size_t>(pf)] += snap_pf.inst_throughput;
            if (t % 500 == 0) {
                pair.check_mirror();
            }
        }
        double sum_policy = 0.0, sum_pf = 0.0;
        for (int n = 0; n < n_ue; ++n) {
            sum_policy += total_policy[static_cast<std::size_t>(n)];
            sum_pf += total_pf[static_cast<std::size_t>(n)];
        }
        check_contract(sum_pf > 0.0, "PF delivered nothing over the eval window");
        const double jfi_policy = sched::jain_index(total_policy);
        const double jfi_pf = sched::jain_index(total_pf);
        per_seed[static_cast<std::size_t>(j)] = {
            episode_seed,
            (sum_policy - sum_pf) / sum_pf,
            (jfi_policy - jfi_pf) / jfi_pf,
        };
    });
    EvalRecord rec;
    rec.update_count = update_count;
    for (const auto& s : per_seed) {
        rec.tp_diff += s.tp_diff;
        rec.jfi_diff += s.jfi_diff;
    }
    rec.tp_diff /= static_cast<double>(per_seed.size());
    rec.jfi_diff /= static_cast<double>(per_seed.size());
    rec.per_seed = std::move(per_seed);
    return rec;
}

EvalRecord evaluate_vs_pf(const drl::DdpgAgent& agent, const RunConfig& cfg,
                          std::uint64_t run_seed, long update_count, ThreadPool& pool) {
    return evaluate_policy_vs_pf(agent_policy(agent), cfg, run_seed, update_count, pool);
}

namespace {

enum class SingleMode { DIRECT, EXPERT };

TrainOutcome run_single(const RunConfig& cfg, std::uint64_t run_seed, ThreadPool& pool,
                        SingleMode mode) {
    cfg.validate();
    const int n_ue = cfg.sim.n_ue;
    const double tp_scale = cfg.sim.max_rate_bits_per_tti();

    drl::DdpgAgent agent(n_ue, cfg.hp, derive_seed(run_seed, kTagAgentInit, 0));
    drl::ReplayBuffer buffer(cfg.hp.replay_capacity);
    Rng replay_rng(derive_seed(run_seed, kTagReplaySampling, 0));

    std::vector<MirroredEnvPair> pairs;
    pairs.reserve(static_cast<std::size_t>(cfg.n_envs));
    for (int i = 0; i < cfg.n_envs; ++i) {
        pairs.emplace_back(cfg.sim, cfg.window_len,
                           derive_seed(run_seed, kTagTrainEpisode, static_cast<std::uint64_t>(i)),
                           derive_seed(run_seed, kTagActionNoise, static_cast<std::uint64_t>(i)));
    }

    TrainingLog log;
    log.run_seed = run_seed;
    log.label = mode == SingleMode::DIRECT ? "direct" : "expert";
    log.evals.push_back(evaluate_vs_pf(agent, cfg, run_seed, 0, pool));

    std::vector<drl::Transition> staged(static_cast<std::size_t>(cfg.n_envs));
    long round = 0;
    std::uint64_t episode_counter = static_cast<std::uint64_t>(cfg.n_envs);
    while (agent.update_count() < cfg.total_updates) {
        if (cfg.episode_len_ttis > 0 && round > 0 && round % cfg.episode_len_ttis == 0) {
            for (int i = 0; i < cfg.n_envs; ++i) {
                const std::uint64_t ep = episode_counter + static_cast<std::uint64_t>(i);
                pairs[static_cast<std::size_t>(i)] =
                    MirroredEnvPair(cfg.sim, cfg.window_len,
                                    derive_seed(run_seed, kTagTrainEpisode, ep),
                                    derive_seed(run_seed, kTagActionNoise, ep));
            }
            episode_counter += static_cast<std::uint64_t>(cfg.n_envs);
        }
        ++round;
        pool.parallel_for(cfg.n_envs, [&](int i) {
            auto& pair = pairs[static_cast<std::size_t>(i)];
            auto state = normalize_state(pair.obs(0)).flatten();
            auto action = agent.select_action(state, true, pair.noise_rng());
            const int pick = drl::argmax_action(action);
            const auto snap_agent = pair.step_side(0, pick);
            const auto snap_pf = pair.step_side(1, pair.pf_pick(1));
            double r = 0.0;
            if (mode == SingleMode::DIRECT) {
                r = reward::direct_reward(snap_agent, cfg.weights, tp_scale);
            } else {
                r = reward::expert_reward(
                    reward::compare_metrics(snap_agent.window_throughput,
                                            snap_pf.window_throughput, cfg.compare_rel_tol),
                    reward::compare_metrics(snap_agent.jfi, snap_pf.jfi, cfg.compare_rel_tol),
                    cfg.weights);
            }
            auto next_state = normalize_state(pair.obs(0)).flatten();
            staged[static_cast<std::size_t>(i)] =
                drl::Transition{std::move(state), std::move(action), r, std::move(next_state)};
            if (pair.environment(0).tti() % 512 == 0) {
                pair.check_mirror();
            }
        });
        double round_reward = 0.0;
        for (auto& t : staged) {
            round_reward += t.r;
            buffer.store(std::move(t));
        }
        log.reward_history.push_back(round_reward / static_cast<double>(cfg.n_envs));

        if (buffer.ready(static_cast<std::size_t>(cfg.hp.batch_size))) {
            const auto batch = buffer.sample(static_cast<std::size_t>(cfg.hp.batch_size), replay_rng);
            drl::TrainStats stats;
            try {
                stats = agent.train_step({batch.data(), batch.size()});
            } catch (const NumericsError&) {
                save_abort_checkpoint(agent, cfg, log.label, run_seed);
                throw;
            }
            log.stats_history.push_back(stats);
            if (agent.update_count() % cfg.eval_every == 0) {
                log.evals.push_back(evaluate_vs_pf(agent, cfg, run_seed, agent.update_count(), pool));
            }
        }
    }
    if (log.evals.back().update_count != agent.update_count()) {
        log.evals.push_back(evaluate_vs_pf(agent, cfg, run_seed, agent.update_count(), pool));
    }
    log.updates_done = agent.update_count();
    return {std::move(agent), std::move(log)};
}

}  // namespace

TrainOutcome run_direct(const RunConfig& cfg, std::uint64_t run_seed, ThreadPool& pool) {
    return run_single(cfg, run_seed, pool, SingleMode::DIRECT);
}

TrainOutcome run_expert(const RunConfig& cfg, std::uint64_t run_seed, ThreadPool& pool) {
    return run_single(cfg, run_seed, pool, SingleMode::EXPERT);
}

DualOutcome run_dual(const RunConfig& cfg, std::uint64_t run_seed, ThreadPool& pool) {
    cfg.validate();
    const int n_ue = cfg.sim.n_ue;

    std::vector<drl::DdpgAgent> agents;
    agents.reserve(2);
    agents.emplace_back(n_ue, cfg.hp, derive_seed(run_seed, kTagAgentInit, 0));
    agents.emplace_back(n_ue, cfg.hp, derive_seed(run_seed, kTagAgentInit, 1));
    std::vector<drl::ReplayBuffer> buffers(2, drl::ReplayBuffer(cfg.hp.replay_capacity));
    std::vector<Rng> replay_rngs{Rng(derive_seed(run_seed, kTagReplaySampling, 0)),
                                 Rng(derive_seed(run_seed, kTagReplaySampling, 1))};

    std::vector<MirroredEnvPair> pairs;
    pairs.reserve(static_cast<std::size_t>(cfg.n_envs));
    for (int i = 0; i < cfg.n_envs; ++i) {
        pairs.emplace_back(cfg.sim, cfg.window_len,
                           derive_seed(run_seed, kTagTrainEpisode, static_cast<std::uint64_t>(i)),
                           derive_seed(run_seed, kTagActionNoise, static_cast<std::uint64_t>(i)));
    }

    std::vector<TrainingLog> logs(2);
    for (int k = 0; k < 2; ++k) {
        logs[static_cast<std::size_t>(k)].run_seed = run_seed;
        logs[static_cast<std::size_t>(k)].label = k == 0 ? "dual/agent0" : "dual/agent1";
        logs[static_cast<std::size_t>(k)].evals.push_back(
            evaluate_vs_pf(agents[static_cast<std::size_t>(k)], cfg, run_seed, 0, pool));
    }

    std::vector<drl::Transition> staged(static_cast<std::size_t>(cfg.n_envs));
    int learner = 0;
    long round = 0;
    std::uint64_t episode_counter = static_cast<std::uint64_t>(cfg.n_envs);
    while (agents[0].update_count() < cfg.total_updates ||
           agents[1].update_count() < cfg.total_updates) {
        if (agents[static_cast<std::size_t>(learner)].update_count() >= cfg.total_updates) {
            learner = 1 - learner;
            continue;
        }
        const int frozen = 1 - learner;
        auto& learner_agent = agents[static_cast<std::size_t>(learner)];
        const auto& frozen_agent = agents[static_cast<std::size_t>(frozen)];
        auto& log = logs[static_cast<std::size_t>(learner)];
        auto& buffer = buffers[static_cast<std::size_t>(learner)];
        auto& replay_rng = replay_rngs[static_cast<std::size_t>(learner)];

        const std::uint64_t frozen_hash = frozen_agent.param_hash();
        const long phase_target = std::min(learner_agent.update_count() + cfg.dual_phase_updates,
                                           cfg.total_updates);
        while (learner_agent.update_count() < phase_target) {
            if (cfg.episode_len_ttis > 0 && round > 0 && round % cfg.episode_len_ttis == 0) {
                for (int i = 0; i < cfg.n_envs; ++i) {
                    const std::uint64_t ep = episode_counter + static_cast<std::uint64_t>(i);
                    pairs[static_cast<std::size_t>(i)] =
                        MirroredEnvPair(cfg.sim, cfg.window_len,
                                        derive_seed(run_seed, kTagTrainEpisode, ep),
                                        derive_seed(run_seed, kTagActionNoise, ep));
                }
                episode_counter += static_cast<std::uint64_t>(cfg.n_envs);
            }
            ++round;
            pool.parallel_for(cfg.n_envs, [&](int i) {
                auto& pair = pairs[static_cast<std::size_t>(i)];
                std::vector<std::vector<double>> states(2), actions(2);
                for (int side = 0; side < 2; ++side) {
                    states[static_cast<std::size_t>(side)] = normalize_state(pair.obs(side)).flatten();
                    const auto& actor = agents[static_cast<std::size_t>(side)];
                    actions[static_cast<std::size_t>(side)] = actor.select_action(
                        states[static_cast<std::size_t>(side)], side == learner, pair.noise_rng());
                }
                reward::RewardSnapshot snaps[2];
                for (int side = 0; side < 2; ++side) {
                    snaps[side] = pair.step_side(
                        side, drl::argmax_action(actions[static_cast<std::size_t>(side)]));
                }
                const auto& mine = snaps[learner];
                const auto& theirs = snaps[frozen];
                const double r = reward::dual_reward(
                    reward::compare_metrics(mine.window_throughput, theirs.window_throughput,
                                            cfg.compare_rel_tol),
                    reward::compare_metrics(mine.jfi, theirs.jfi, cfg.compare_rel_tol),
                    cfg.weights);
                auto next_state = normalize_state(pair.obs(learner)).flatten();
                staged[static_cast<std::size_t>(i)] = drl::Transition{
                    std::move(states[static_cast<std::size_t>(learner)]),
                    std::move(actions[static_cast<std::size_t>(learner)]), r,
                    std::move(next_state)};
                if (pair.environment(0).tti() % 512 == 0) {
                    pair.check_mirror();
                }
            });
            double round_reward = 0.0;
            for (auto& t : staged) {
                round_reward += t.r;
                buffer.store(std::move(t));
            }
            log.reward_history.push_back(round_reward / static_cast<double>(cfg.n_envs));

            if (buffer.ready(static_cast<std::size_t>(cfg.hp.batch_size))) {
                const auto batch =
                    buffer.sample(static_cast<std::size_t>(cfg.hp.batch_size), replay_rng);
                drl::TrainStats stats;
                try {
                    stats = learner_agent.train_step({batch.data(), batch.size()});
                } catch (const NumericsError&) {
                    save_abort_checkpoint(learner_agent, cfg, log.label, run_seed);
                    throw;
                }
                log.stats_history.push_back(stats);
                if (learner_agent.update_count() % cfg.eval_every == 0) {
                    log.evals.push_back(evaluate_vs_pf(learner_agent, cfg, run_seed,
                                                       learner_agent.update_count(), pool));
                }
            }
        }
        check_contract(frozen_agent.param_hash() == frozen_hash,
                       "frozen agent's parameters changed during the opponent's phase");
        learner = frozen;
    }
    for (int k = 0; k < 2; ++k) {
        auto& log = logs[static_cast<std::size_t>(k)];
        const auto& agent = agents[static_cast<std::size_t>(k)];
        if (log.evals.back().update_count != agent.update_count()) {
            log.evals.push_back(evaluate_vs_pf(agent, cfg, run_seed, agent.update_count(), pool));
        }
        log.updates_done = agent.update_count();
    }
    return {std::move(agents[0]), std::move(agents[1]), std::move(logs[0]), std::move(logs[1])};
}

}  // namespace schedrl::harness
