#include "schedrl/drl/agent.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "schedrl/errors.hpp"

namespace schedrl::drl {

namespace {

constexpr char kMagic[8] = {'S', 'R', 'L', 'A', 'G', 'T', 'V', '1'};

constexpr std::uint64_t kTagActorInit = 11;
constexpr std::uint64_t kTagCriticInit = 12;

std::vector<int> actor_sizes(int n_ue, const Hyperparams& hp) {
    std::vector<int> sizes{2 * n_ue};
    sizes.insert(sizes.end(), static_cast<std::size_t>(hp.hidden_layers), hp.hidden_units);
    sizes.push_back(n_ue);
    return sizes;
}

std::vector<int> critic_sizes(int n_ue, const Hyperparams& hp) {
    std::vector<int> sizes{3 * n_ue};
    sizes.insert(sizes.end(), static_cast<std::size_t>(hp.hidden_layers), hp.hidden_units);
    sizes.push_back(1);
    return sizes;
}

std::vector<double> concat(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

void write_bytes(std::ofstream& out, const void* p, std::size_t n) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void read_bytes(std::ifstream& in, void* p, std::size_t n) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    check_config(in.good(), "checkpoint: truncated file");
}

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
    write_bytes(out, &v, sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
    T v{};
    read_bytes(in, &v, sizeof(T));
    return v;
}

void write_net(std::ofstream& out, const Mlp& net) {
    const auto& sizes = net.layer_sizes();
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(sizes.size()));
    for (int s : sizes) {
        write_pod<std::int32_t>(out, s);
    }
    write_pod<std::uint8_t>(out, net.output_activation() == OutputActivation::SIMPLEX ? 1 : 0);
    for (int l = 0; l < net.n_layers(); ++l) {
        write_bytes(out, net.weights()[l].data(), net.weights()[l].size() * sizeof(double));
        write_bytes(out, net.biases()[l].data(), net.biases()[l].size() * sizeof(double));
    }
}

void read_net(std::ifstream& in, Mlp& net) {
    const auto n_sizes = read_pod<std::uint32_t>(in);
    std::vector<int> sizes(n_sizes);
    for (auto& s : sizes) {
        s = read_pod<std::int32_t>(in);
    }
    const auto act = read_pod<std::uint8_t>(in);
    check_config(sizes == net.layer_sizes(), "checkpoint: layer sizes do not match agent config");
    check_config((act == 1) == (net.output_activation() == OutputActivation::SIMPLEX),
                 "checkpoint: output activation mismatch");
    for (int l = 0; l < net.n_layers(); ++l) {
        read_bytes(in, net.weights()[l].data(), net.weights()[l].size() * sizeof(double));
        read_bytes(in, net.biases()[l].data(), net.biases()[l].size() * sizeof(double));
    }
}

void hash_net(std::uint64_t& h, const Mlp& net) {
    const auto mix = [&h](const std::vector<double>& v) {
        const unsigned char* bytes = reinterpret_cast<const unsigned char*>(v.data());
        for (std::size_t i = 0; i < v.size() * sizeof(double); ++i) {
            h ^= bytes[i];
            h *= 0x100000001B3ULL;
        }
    };
    for (int l = 0; l < net.n_layers(); ++l) {
        mix(net.weights()[l]);
        mix(net.biases()[l]);
    }
}

}  // namespace

void Hyperparams::validate() const {
    check_config(actor_lr > 0.0 && critic_lr > 0.0, "Hyperparams: learning rates must be > 0");
    check_config(gamma >= 0.0 && gamma < 1.0, "Hyperparams: gamma out of [0,1)");
    check_config(tau > 0.0 && tau <= 1.0, "Hyperparams: tau out of (0,1]");
    check_config(batch_size >= 1, "Hyperparams: batch size must be >= 1");
    check_config(noise_scale >= 0.0, "Hyperparams: noise scale must be >= 0");
    check_config(noise_decay > 0.0 && noise_decay <= 1.0, "Hyperparams: noise decay out of (0,1]");
    check_config(updates_per_eval >= 1, "Hyperparams: updates_per_eval must be >= 1");
    check_config(hidden_units >= 1 && hidden_layers >= 1, "Hyperparams: bad hidden shape");
    check_config(replay_capacity >= 1, "Hyperparams: replay capacity must be >= 1");
}

int argmax_action(std::span<const double> action) {
    check_contract(!action.empty(), "argmax_action: empty action");
    int best = 0;
    for (std::size_t i = 1; i < action.size(); ++i) {
        if (action[i] > action[best]) {
            best = static_cast<int>(i);
        }
    }
    return best;
}

DdpgAgent::DdpgAgent(int n_ue, const Hyperparams& hp)
    : n_ue_(n_ue),
      hp_(hp),
      actor_(actor_sizes(n_ue, hp), OutputActivation::SIMPLEX),
      critic_(critic_sizes(n_ue, hp), OutputActivation::IDENTITY),
      target_actor_(actor_),
      target_critic_(critic_),
      actor_opt_(actor_, hp.actor_lr),
      critic_opt_(critic_, hp.critic_lr),
      noise_scale_(hp.noise_scale) {
    check_contract(n_ue >= 2, "DdpgAgent: n_ue must be >= 2");
    hp_.validate();
}

DdpgAgent::DdpgAgent(int n_ue, const Hyperparams& hp, std::uint64_t init_seed)
    : DdpgAgent(n_ue, hp) {
    Rng actor_rng(derive_seed(init_seed, kTagActorInit));
    Rng critic_rng(derive_seed(init_seed, kTagCriticInit));
    actor_.init(actor_rng);
    critic_.init(critic_rng);
    target_actor_ = actor_;
    target_critic_ = critic_;
}

std::vector<double> DdpgAgent::select_action(std::span<const double> state, bool explore,
                                             Rng& rng) const {
    check_contract(static_cast<int>(state.size()) == state_size(),
                   "select_action: bad state size");
    Mlp::Cache cache;
    std::vector<double> action = actor_.forward(state, &cache);
    if (!explore) {
        return action;
    }
    std::vector<double> logits = cache.pre.back();
    for (double& z : logits) {
        z += noise_scale_ * rng.normal();
    }
    return softmax(logits);
}

TrainStats DdpgAgent::train_step(std::span<const Transition* const> batch) {
    check_contract(!batch.empty(), "train_step: empty batch");
    const double inv_b = 1.0 / static_cast<double>(batch.size());

    Mlp::Gradients critic_grads = critic_.zero_gradients();
    Mlp::Gradients actor_grads = actor_.zero_gradients();
    TrainStats stats;

    for (const Transition* t : batch) {
        check_contract(static_cast<int>(t->s.size()) == state_size() &&
                           static_cast<int>(t->a.size()) == n_ue_,
                       "train_step: transition shape mismatch");
        // Critic regression toward r + gamma * Q'(s', mu'(s')).
        const std::vector<double> a_next = target_actor_.forward(t->s_next);
        const double q_next = target_critic_.forward(concat(t->s_next, a_next))[0];
        const double y = t->r + hp_.gamma * q_next;

        Mlp::Cache critic_cache;
        const double q = critic_.forward(concat(t->s, t->a), &critic_cache)[0];
        const double diff = q - y;
        stats.critic_loss += diff * diff * inv_b;
        const double dq[1] = {2.0 * diff * inv_b};
        critic_grads.accumulate(critic_.backward(critic_cache, dq), 1.0);

        // Actor ascent on Q(s, mu(s)), chained through the critic's action
        // input.
        Mlp::Cache actor_cache;
        const std::vector<double> a_pred = actor_.forward(t->s, &actor_cache);
        Mlp::Cache q_cache;
        const double q_pred = critic_.forward(concat(t->s, a_pred), &q_cache)[0];
        stats.actor_objective += q_pred * inv_b;
        const double one[1] = {1.0};
        const Mlp::Gradients dq_dinput = critic_.backward(q_cache, one);
        const std::span<const double> da{dq_dinput.input.data() + state_size(),
                                         static_cast<std::size_t>(n_ue_)};
        actor_grads.accumulate(actor_.backward(actor_cache, da), inv_b);
    }

    actor_grads.scale_all(-1.0);  // ascend
    critic_opt_.step(critic_, critic_grads);
    actor_opt_.step(actor_, actor_grads);
    soft_update(actor_, target_actor_, hp_.tau);
    soft_update(critic_, target_critic_, hp_.tau);
    ++update_count_;
    noise_scale_ *= hp_.noise_decay;

    if (!std::isfinite(stats.critic_loss) || !std::isfinite(stats.actor_objective) ||
        !actor_.all_finite() || !critic_.all_finite() || !target_actor_.all_finite() ||
        !target_critic_.all_finite()) {
        throw NumericsError("train_step: non-finite value after update " +
                            std::to_string(update_count_));
    }
    return stats;
}

std::uint64_t DdpgAgent::param_hash() const {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    hash_net(h, actor_);
    hash_net(h, critic_);
    hash_net(h, target_actor_);
    hash_net(h, target_critic_);
    return h;
}

void DdpgAgent::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    check_config(out.good(), "checkpoint: cannot open " + path + " for writing");
    write_bytes(out, kMagic, sizeof(kMagic));
    write_pod<std::int32_t>(out, n_ue_);
    write_pod<std::int64_t>(out, update_count_);
    write_pod<double>(out, noise_scale_);
    write_pod<double>(out, hp_.actor_lr);
    write_pod<double>(out, hp_.critic_lr);
    write_pod<double>(out, hp_.gamma);
    write_pod<double>(out, hp_.tau);
    write_pod<std::int32_t>(out, hp_.batch_size);
    write_pod<double>(out, hp_.noise_scale);
    write_pod<double>(out, hp_.noise_decay);
    write_pod<std::int32_t>(out, hp_.updates_per_eval);
    write_pod<std::int32_t>(out, hp_.hidden_units);
    write_pod<std::int32_t>(out, hp_.hidden_layers);
    write_pod<std::uint64_t>(out, hp_.replay_capacity);
    write_net(out, actor_);
    write_net(out, critic_);
    write_net(out, target_actor_);
    write_net(out, target_critic_);
    check_config(out.good(), "checkpoint: write failed for " + path);
}

DdpgAgent DdpgAgent::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    check_config(in.good(), "checkpoint: cannot open " + path);
    char magic[8];
    read_bytes(in, magic, sizeof(magic));
    check_config(std::memcmp(magic, kMagic, sizeof(kMagic)) == 0,
                 "checkpoint: bad magic in " + path);
    const int n_ue = read_pod<std::int32_t>(in);
    const auto update_count = read_pod<std::int64_t>(in);
    const double noise_scale = read_pod<double>(in);
    Hyperparams hp;
    hp.actor_lr = read_pod<double>(in);
    hp.critic_lr = read_pod<double>(in);
    hp.gamma = read_pod<double>(in);
    hp.tau = read_pod<double>(in);
    hp.batch_size = read_pod<std::int32_t>(in);
    hp.noise_scale = read_pod<double>(in);
    hp.noise_decay = read_pod<double>(in);
    hp.updates_per_eval = read_pod<std::int32_t>(in);
    hp.hidden_units = read_pod<std::int32_t>(in);
    hp.hidden_layers = read_pod<std::int32_t>(in);
    hp.replay_capacity = read_pod<std::uint64_t>(in);

    DdpgAgent agent(n_ue, hp);
    read_net(in, agent.actor_);
    read_net(in, agent.critic_);
    read_net(in, agent.target_actor_);
    read_net(in, agent.target_critic_);
    agent.update_count_ = update_count;
    agent.noise_scale_ = noise_scale;
    return agent;
}

}  // namespace schedrl::drl
