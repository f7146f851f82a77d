#pragma once

#include <span>
#include <vector>

#include "schedrl/rng.hpp"

namespace schedrl::drl {

enum class OutputActivation {
    SIMPLEX,   // max-subtracted exponential normalizer (softmax)
    IDENTITY,
};

// Fully connected net, ReLU hidden layers. Weights are row-major
// [out x in] per layer. Double precision throughout so the analytic
// gradients can be checked against central finite differences.
class Mlp {
  public:
    Mlp(std::vector<int> layer_sizes, OutputActivation output_activation);

    // Uniform init in +-1/sqrt(fan_in).
    void init(Rng& rng);

    struct Cache {
        std::vector<std::vector<double>> activations;  // per layer, index 0 = input
        std::vector<std::vector<double>> pre;          // pre-activation per layer
    };

    std::vector<double> forward(std::span<const double> x, Cache* cache = nullptr) const;

    struct Gradients {
        std::vector<std::vector<double>> weights;
        std::vector<std::vector<double>> biases;
        std::vector<double> input;

        void accumulate(const Gradients& other, double scale);
        void scale_all(double s);
    };

    Gradients zero_gradients() const;

    // Vector-Jacobian product: gradients of <dy, output> w.r.t. every
    // parameter and the input, chained through the activations.
    Gradients backward(const Cache& cache, std::span<const double> dy) const;

    const std::vector<int>& layer_sizes() const { return layer_sizes_; }
    int input_size() const { return layer_sizes_.front(); }
    int output_size() const { return layer_sizes_.back(); }
    int n_layers() const { return static_cast<int>(weights_.size()); }
    OutputActivation output_activation() const { return output_activation_; }

    std::vector<std::vector<double>>& weights() { return weights_; }
    std::vector<std::vector<double>>& biases() { return biases_; }
    const std::vector<std::vector<double>>& weights() const { return weights_; }
    const std::vector<std::vector<double>>& biases() const { return biases_; }

    std::size_t param_count() const;
    bool all_finite() const;

  private:
    std::vector<int> layer_sizes_;
    OutputActivation output_activation_;
    std::vector<std::vector<double>> weights_;  // [layer][out*in]
    std::vector<std::vector<double>> biases_;   // [layer][out]
};

// Numerically stable softmax (max-subtracted).
std::vector<double> softmax(std::span<const double> logits);

// target <- tau * live + (1 - tau) * target, elementwise.
void soft_update(const Mlp& live, Mlp& target, double tau);

// First-order adaptive-moment parameter update (bias-corrected), walking
// the net's layers in order. Holds one moment pair per parameter.
class AdamOptimizer {
  public:
    AdamOptimizer(const Mlp& net, double lr, double beta1 = 0.9, double beta2 = 0.999,
                  double eps = 1e-8);

    // Descent step; negate the gradients beforehand to ascend.
    void step(Mlp& net, const Mlp::Gradients& grads);

    double learning_rate() const { return lr_; }

  private:
    void update_span(std::span<double> params, std::span<const double> grads,
                     std::size_t offset, double correction1, double correction2);

    double lr_, beta1_, beta2_, eps_;
    long t_ = 0;
    std::vector<double> m_, v_;
};

}  // namespace schedrl::drl
