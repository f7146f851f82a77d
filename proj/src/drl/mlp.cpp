#include "schedrl/drl/mlp.hpp"

#include <algorithm>
#include <cmath>

#include "schedrl/errors.hpp"

namespace schedrl::drl {

Mlp::Mlp(std::vector<int> layer_sizes, OutputActivation output_activation)
    : layer_sizes_(std::move(layer_sizes)), output_activation_(output_activation) {
    check_contract(layer_sizes_.size() >= 2, "Mlp: need at least input and output sizes");
    for (int s : layer_sizes_) {
        check_contract(s >= 1, "Mlp: layer sizes must be >= 1");
    }
    for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
        const std::size_t in = static_cast<std::size_t>(layer_sizes_[l]);
        const std::size_t out = static_cast<std::size_t>(layer_sizes_[l + 1]);
        weights_.emplace_back(in * out, 0.0);
        biases_.emplace_back(out, 0.0);
    }
}

void Mlp::init(Rng& rng) {
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(layer_sizes_[l]));
        for (double& w : weights_[l]) {
            w = rng.uniform(-bound, bound);
        }
        for (double& b : biases_[l]) {
            b = rng.uniform(-bound, bound);
        }
    }
}

std::vector<double> softmax(std::span<const double> logits) {
    check_contract(!logits.empty(), "softmax: empty input");
    const double top = *std::max_element(logits.begin(), logits.end());
    std::vector<double> out(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - top);
        sum += out[i];
    }
    for (double& o : out) {
        o /= sum;
    }
    return out;
}

std::vector<double> Mlp::forward(std::span<const double> x, Cache* cache) const {
    check_contract(static_cast<int>(x.size()) == input_size(), "Mlp::forward: bad input size");
    if (cache) {
        cache->activations.assign(1, std::vector<double>(x.begin(), x.end()));
        cache->pre.clear();
    }
    std::vector<double> act(x.begin(), x.end());
    for (int l = 0; l < n_layers(); ++l) {
        const std::size_t in = static_cast<std::size_t>(layer_sizes_[l]);
        const std::size_t out = static_cast<std::size_t>(layer_sizes_[l + 1]);
        const double* w = weights_[l].data();
        std::vector<double> z(biases_[l]);
        for (std::size_t o = 0; o < out; ++o) {
            const double* row = w + o * in;
            double acc = 0.0;
            for (std::size_t i = 0; i < in; ++i) {
                acc += row[i] * act[i];
            }
            z[o] += acc;
        }
        if (cache) {
            cache->pre.push_back(z);
        }
        const bool last = l + 1 == n_layers();
        if (!last) {
            for (double& v : z) {
                v = std::max(0.0, v);
            }
        } else if (output_activation_ == OutputActivation::SIMPLEX) {
            z = softmax(z);
        }
        if (cache) {
            cache->activations.push_back(z);
        }
        act = std::move(z);
    }
    return act;
}

Mlp::Gradients Mlp::zero_gradients() const {
    Gradients g;
    for (int l = 0; l < n_layers(); ++l) {
        g.weights.emplace_back(weights_[l].size(), 0.0);
        g.biases.emplace_back(biases_[l].size(), 0.0);
    }
    g.input.assign(static_cast<std::size_t>(input_size()), 0.0);
    return g;
}

void Mlp::Gradients::accumulate(const Gradients& other, double scale) {
    for (std::size_t l = 0; l < weights.size(); ++l) {
        for (std::size_t i = 0; i < weights[l].size(); ++i) {
            weights[l][i] += scale * other.weights[l][i];
        }
        for (std::size_t i = 0; i < biases[l].size(); ++i) {
            biases[l][i] += scale * other.biases[l][i];
        }
    }
    for (std::size_t i = 0; i < input.size(); ++i) {
        input[i] += scale * other.input[i];
    }
}

void Mlp::Gradients::scale_all(double s) {
    for (auto& layer : weights) {
        for (double& v : layer) {
            v *= s;
        }
    }
    for (auto& layer : biases) {
        for (double& v : layer) {
            v *= s;
        }
    }
    for (double& v : input) {
        v *= s;
    }
}

Mlp::Gradients Mlp::backward(const Cache& cache, std::span<const double> dy) const {
    check_contract(static_cast<int>(dy.size()) == output_size(), "Mlp::backward: bad dy size");
    check_contract(static_cast<int>(cache.pre.size()) == n_layers(),
                   "Mlp::backward: cache does not match this net");
    Gradients g = zero_gradients();

    // Delta at the output layer's pre-activation.
    std::vector<double> delta(dy.begin(), dy.end());
    if (output_activation_ == OutputActivation::SIMPLEX) {
        const std::vector<double>& y = cache.activations.back();
        double dot = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            dot += dy[i] * y[i];
        }
        for (std::size_t i = 0; i < y.size(); ++i) {
            delta[i] = y[i] * (dy[i] - dot);
        }
    }

    for (int l = n_layers() - 1; l >= 0; --l) {
        const std::size_t in = static_cast<std::size_t>(layer_sizes_[l]);
        const std::size_t out = static_cast<std::size_t>(layer_sizes_[l + 1]);
        const std::vector<double>& below = cache.activations[static_cast<std::size_t>(l)];
        for (std::size_t o = 0; o < out; ++o) {
            g.biases[l][o] = delta[o];
            double* wrow = g.weights[l].data() + o * in;
            for (std::size_t i = 0; i < in; ++i) {
                wrow[i] = delta[o] * below[i];
            }
        }
        std::vector<double> dprev(in, 0.0);
        const double* w = weights_[l].data();
        for (std::size_t o = 0; o < out; ++o) {
            const double* row = w + o * in;
            for (std::size_t i = 0; i < in; ++i) {
                dprev[i] += row[i] * delta[o];
            }
        }
        if (l > 0) {
            const std::vector<double>& zprev = cache.pre[static_cast<std::size_t>(l - 1)];
            for (std::size_t i = 0; i < in; ++i) {
                dprev[i] = zprev[i] > 0.0 ? dprev[i] : 0.0;
            }
        }
        delta = std::move(dprev);
    }
    g.input = std::move(delta);
    return g;
}

std::size_t Mlp::param_count() const {
    std::size_t n = 0;
    for (int l = 0; l < n_layers(); ++l) {
        n += weights_[l].size() + biases_[l].size();
    }
    return n;
}

bool Mlp::all_finite() const {
    for (int l = 0; l < n_layers(); ++l) {
        for (double w : weights_[l]) {
            if (!std::isfinite(w)) {
                return false;
            }
        }
        for (double b : biases_[l]) {
            if (!std::isfinite(b)) {
                return false;
            }
        }
    }
    return true;
}

void soft_update(const Mlp& live, Mlp& target, double tau) {
    check_contract(live.layer_sizes() == target.layer_sizes(), "soft_update: shape mismatch");
    check_contract(tau >= 0.0 && tau <= 1.0, "soft_update: tau out of [0,1]");
    for (int l = 0; l < live.n_layers(); ++l) {
        const auto& lw = live.weights()[l];
        auto& tw = target.weights()[l];
        for (std::size_t i = 0; i < lw.size(); ++i) {
            tw[i] = tau * lw[i] + (1.0 - tau) * tw[i];
        }
        const auto& lb = live.biases()[l];
        auto& tb = target.biases()[l];
        for (std::size_t i = 0; i < lb.size(); ++i) {
            tb[i] = tau * lb[i] + (1.0 - tau) * tb[i];
        }
    }
}

AdamOptimizer::AdamOptimizer(const Mlp& net, double lr, double beta1, double beta2, double eps)
    : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
    check_contract(lr > 0.0, "AdamOptimizer: lr must be > 0");
    m_.assign(net.param_count(), 0.0);
    v_.assign(net.param_count(), 0.0);
}

void AdamOptimizer::update_span(std::span<double> params, std::span<const double> grads,
                                std::size_t offset, double correction1, double correction2) {
    for (std::size_t i = 0; i < params.size(); ++i) {
        double& m = m_[offset + i];
        double& v = v_[offset + i];
        const double g = grads[i];
        m = beta1_ * m + (1.0 - beta1_) * g;
        v = beta2_ * v + (1.0 - beta2_) * g * g;
        const double m_hat = m / correction1;
        const double v_hat = v / correction2;
        params[i] -= lr_ * m_hat / (std::sqrt(v_hat) + eps_);
    }
}

void AdamOptimizer::step(Mlp& net, const Mlp::Gradients& grads) {
    check_contract(net.param_count() == m_.size(), "AdamOptimizer: net does not match state");
    ++t_;
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    std::size_t offset = 0;
    for (int l = 0; l < net.n_layers(); ++l) {
        update_span(net.weights()[l], grads.weights[l], offset, c1, c2);
        offset += net.weights()[l].size();
        update_span(net.biases()[l], grads.biases[l], offset, c1, c2);
        offset += net.biases()[l].size();
    }
}

}  // namespace schedrl::drl
