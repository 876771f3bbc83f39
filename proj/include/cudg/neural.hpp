#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace cudg {

enum class Activation { identity, relu, scaled_tanh, square };

struct DenseLayer {
    int in = 0;
    int out = 0;
    std::vector<double> W;  // out x in, row-major
    std::vector<double> b;  // empty when the layer has no bias
    bool trainable = true;
    Activation act = Activation::identity;
    double act_scale = 1.0;  // only used by scaled_tanh
};

DenseLayer make_dense(int in, int out, Activation act, bool bias, bool trainable, double act_scale = 1.0);

// Uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)) on weights and biases of
// trainable layers.
void init_weights(std::vector<DenseLayer>& stack, std::uint64_t seed);

struct DropoutSpec {
    double p_drop = 0.0;
    bool training = false;
};

struct StackCache {
    std::vector<std::vector<double>> x;     // x[l] = input fed to layer l
    std::vector<std::vector<double>> pre;   // pre-activation values per layer
    std::vector<std::vector<double>> mask;  // dropout multipliers per layer output; empty = none
    std::vector<double> output;
};

// Runs the stack on one input vector. In training mode a fresh inverted
// dropout mask is sampled for every layer output except the last; inference
// applies no dropout and no scaling.
std::vector<double> forward(const std::vector<DenseLayer>& stack, const std::vector<double>& input,
                            const DropoutSpec& dropout, std::mt19937_64& rng, StackCache& cache);

// Deterministic inference pass without dropout bookkeeping.
std::vector<double> infer(const std::vector<DenseLayer>& stack, const std::vector<double>& input);

struct StackGrads {
    std::vector<std::vector<double>> dW;  // empty block for non-trainable layers
    std::vector<std::vector<double>> db;
    std::vector<double> dinput;
};

// Exact reverse-mode pass through the cached forward, dropout masks included.
// Non-trainable layers propagate gradients but contribute no parameter blocks.
StackGrads backward(const std::vector<DenseLayer>& stack, const StackCache& cache,
                    const std::vector<double>& dout);

struct AdamWConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double weight_decay = 0.01;
};

struct AdamWState {
    AdamWConfig cfg;
    long step = 0;
    std::vector<std::vector<double>> mW, vW;  // moment accumulators per layer
    std::vector<std::vector<double>> mb, vb;
};

AdamWState make_adamw(const std::vector<DenseLayer>& stack, const AdamWConfig& cfg);

// Decoupled weight decay Adam update with bias correction; touches trainable
// layers only.
void adamw_step(AdamWState& state, std::vector<DenseLayer>& stack, const StackGrads& grads);

// loss = mean_i max(0, -m_i (v_i - vt_i)), returned with d loss / d v.
// Subgradient at the kink is 0.
std::pair<double, std::vector<double>> margin_ranking_loss(const std::vector<double>& v,
                                                           const std::vector<double>& vt,
                                                           const std::vector<double>& m);

// Maps a network output vector to (loss, d loss / d output).
using OutputLoss = std::function<std::pair<double, std::vector<double>>(const std::vector<double>&)>;

struct FdCheckReport {
    bool pass = false;
    double worst_rel_err = 0.0;
    double tolerance = 0.0;
    int worst_layer = -1;
    std::size_t worst_param = 0;
};

// Central-difference check of every trainable parameter's analytic gradient
// (dropout disabled). Relative error uses max(|analytic|, |fd|, 1e-6) as the
// denominator.
FdCheckReport fd_gradient_check(std::vector<DenseLayer>& stack, const OutputLoss& loss,
                                const std::vector<double>& input, double step, double tolerance);

}  // namespace cudg
