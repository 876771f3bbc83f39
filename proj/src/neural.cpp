#include "cudg/neural.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cudg {

namespace {

double activate(Activation act, double z, double scale) {
    switch (act) {
        case Activation::identity: return z;
        case Activation::relu: return z > 0 ? z : 0.0;
        case Activation::scaled_tanh: return scale * std::tanh(z);
        case Activation::square: return z * z;
    }
    return z;
}

double activate_grad(Activation act, double z, double scale) {
    switch (act) {
        case Activation::identity: return 1.0;
        case Activation::relu: return z > 0 ? 1.0 : 0.0;
        case Activation::scaled_tanh: {
            double t = std::tanh(z);
            return scale * (1.0 - t * t);
        }
        case Activation::square: return 2.0 * z;
    }
    return 1.0;
}

void check_stack_shapes(const std::vector<DenseLayer>& stack, std::size_t input_len) {
    if (stack.empty()) throw std::invalid_argument("network stack is empty");
    std::size_t len = input_len;
    for (std::size_t l = 0; l < stack.size(); ++l) {
        const DenseLayer& layer = stack[l];
        if (static_cast<std::size_t>(layer.in) != len)
            throw std::invalid_argument("layer " + std::to_string(l) + " expects input of " +
                                        std::to_string(layer.in) + ", got " + std::to_string(len));
        if (layer.W.size() != static_cast<std::size_t>(layer.in) * layer.out)
            throw std::invalid_argument("layer " + std::to_string(l) + " weight shape mismatch");
        if (!layer.b.empty() && layer.b.size() != static_cast<std::size_t>(layer.out))
            throw std::invalid_argument("layer " + std::to_string(l) + " bias shape mismatch");
        len = static_cast<std::size_t>(layer.out);
    }
}

}  // namespace

DenseLayer make_dense(int in, int out, Activation act, bool bias, bool trainable, double act_scale) {
    if (in < 1 || out < 1) throw std::invalid_argument("make_dense: layer dimensions must be >= 1");
    DenseLayer layer;
    layer.in = in;
    layer.out = out;
    layer.W.assign(static_cast<std::size_t>(in) * out, 0.0);
    if (bias) layer.b.assign(out, 0.0);
    layer.trainable = trainable;
    layer.act = act;
    layer.act_scale = act_scale;
    return layer;
}

void init_weights(std::vector<DenseLayer>& stack, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (DenseLayer& layer : stack) {
        if (!layer.trainable) continue;
        double bound = 1.0 / std::sqrt(static_cast<double>(layer.in));
        std::uniform_real_distribution<double> dist(-bound, bound);
        for (double& w : layer.W) w = dist(rng);
        for (double& w : layer.b) w = dist(rng);
    }
}

std::vector<double> forward(const std::vector<DenseLayer>& stack, const std::vector<double>& input,
                            const DropoutSpec& dropout, std::mt19937_64& rng, StackCache& cache) {
    check_stack_shapes(stack, input.size());
    if (dropout.p_drop < 0 || dropout.p_drop >= 1)
        throw std::invalid_argument("dropout probability must be in [0, 1)");

    const std::size_t n_layers = stack.size();
    cache.x.assign(n_layers, {});
    cache.pre.assign(n_layers, {});
    cache.mask.assign(n_layers, {});

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> cur = input;
    for (std::size_t l = 0; l < n_layers; ++l) {
        const DenseLayer& layer = stack[l];
        cache.x[l] = cur;
        std::vector<double> z(layer.out);
        for (int o = 0; o < layer.out; ++o) {
            const double* row = layer.W.data() + static_cast<std::size_t>(o) * layer.in;
            double acc = layer.b.empty() ? 0.0 : layer.b[o];
            for (int i = 0; i < layer.in; ++i) acc += row[i] * cur[i];
            z[o] = acc;
        }
        cache.pre[l] = z;
        std::vector<double> a(layer.out);
        for (int o = 0; o < layer.out; ++o) a[o] = activate(layer.act, z[o], layer.act_scale);

        bool masked = dropout.training && dropout.p_drop > 0 && l + 1 < n_layers;
        if (masked) {
            std::vector<double> mask(layer.out);
            double keep_scale = 1.0 / (1.0 - dropout.p_drop);
            for (int o = 0; o < layer.out; ++o)
                mask[o] = unit(rng) < dropout.p_drop ? 0.0 : keep_scale;
            for (int o = 0; o < layer.out; ++o) a[o] *= mask[o];
            cache.mask[l] = std::move(mask);
        }
        cur = std::move(a);
    }
    cache.output = cur;
    return cur;
}

std::vector<double> infer(const std::vector<DenseLayer>& stack, const std::vector<double>& input) {
    StackCache cache;
    std::mt19937_64 unused(0);
    return forward(stack, input, DropoutSpec{0.0, false}, unused, cache);
}

StackGrads backward(const std::vector<DenseLayer>& stack, const StackCache& cache,
                    const std::vector<double>& dout) {
    const std::size_t n_layers = stack.size();
    if (cache.x.size() != n_layers || cache.pre.size() != n_layers)
        throw std::invalid_argument("backward: cache does not match stack");
    if (dout.size() != cache.output.size())
        throw std::invalid_argument("backward: output gradient length mismatch");

    StackGrads g;
    g.dW.assign(n_layers, {});
    g.db.assign(n_layers, {});

    std::vector<double> grad = dout;  // gradient wrt current layer's (post-dropout) output
    for (std::size_t li = n_layers; li-- > 0;) {
        const DenseLayer& layer = stack[li];
        const std::vector<double>& mask = cache.mask[li];
        std::vector<double> dz(layer.out);
        for (int o = 0; o < layer.out; ++o) {
            double da = mask.empty() ? grad[o] : grad[o] * mask[o];
            dz[o] = da * activate_grad(layer.act, cache.pre[li][o], layer.act_scale);
        }
        if (layer.trainable) {
            g.dW[li].assign(layer.W.size(), 0.0);
            const std::vector<double>& x = cache.x[li];
            for (int o = 0; o < layer.out; ++o) {
                double* row = g.dW[li].data() + static_cast<std::size_t>(o) * layer.in;
                for (int i = 0; i < layer.in; ++i) row[i] = dz[o] * x[i];
            }
            if (!layer.b.empty()) g.db[li] = dz;
        }
        std::vector<double> dx(layer.in, 0.0);
        for (int o = 0; o < layer.out; ++o) {
            const double* row = layer.W.data() + static_cast<std::size_t>(o) * layer.in;
            for (int i = 0; i < layer.in; ++i) dx[i] += row[i] * dz[o];
        }
        grad = std::move(dx);
    }
    g.dinput = std::move(grad);
    return g;
}

AdamWState make_adamw(const std::vector<DenseLayer>& stack, const AdamWConfig& cfg) {
    AdamWState st;
    st.cfg = cfg;
    st.mW.resize(stack.size());
    st.vW.resize(stack.size());
    st.mb.resize(stack.size());
    st.vb.resize(stack.size());
    for (std::size_t l = 0; l < stack.size(); ++l) {
        if (!stack[l].trainable) continue;
        st.mW[l].assign(stack[l].W.size(), 0.0);
        st.vW[l].assign(stack[l].W.size(), 0.0);
        st.mb[l].assign(stack[l].b.size(), 0.0);
        st.vb[l].assign(stack[l].b.size(), 0.0);
    }
    return st;
}

namespace {

void adamw_update(const AdamWConfig& cfg, double bc1, double bc2, std::vector<double>& w,
                  const std::vector<double>& grad, std::vector<double>& m, std::vector<double>& v) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        double gi = grad[i];
        m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * gi;
        v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * gi * gi;
        double mhat = m[i] / bc1;
        double vhat = v[i] / bc2;
        w[i] -= cfg.lr * (mhat / (std::sqrt(vhat) + cfg.eps) + cfg.weight_decay * w[i]);
    }
}

}  // namespace

void adamw_step(AdamWState& state, std::vector<DenseLayer>& stack, const StackGrads& grads) {
    if (grads.dW.size() != stack.size() || state.mW.size() != stack.size())
        throw std::invalid_argument("adamw_step: state/gradient layer count mismatch");
    ++state.step;
    const AdamWConfig& cfg = state.cfg;
    double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
    double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
    for (std::size_t l = 0; l < stack.size(); ++l) {
        DenseLayer& layer = stack[l];
        if (!layer.trainable) continue;
        if (grads.dW[l].size() != layer.W.size())
            throw std::invalid_argument("adamw_step: gradient shape mismatch at layer " + std::to_string(l));
        adamw_update(cfg, bc1, bc2, layer.W, grads.dW[l], state.mW[l], state.vW[l]);
        if (!layer.b.empty()) adamw_update(cfg, bc1, bc2, layer.b, grads.db[l], state.mb[l], state.vb[l]);
    }
}

std::pair<double, std::vector<double>> margin_ranking_loss(const std::vector<double>& v,
                                                           const std::vector<double>& vt,
                                                           const std::vector<double>& m) {
    if (v.size() != vt.size() || v.size() != m.size())
        throw std::invalid_argument("margin_ranking_loss: length mismatch");
    if (v.empty()) throw std::invalid_argument("margin_ranking_loss: empty input");
    double loss = 0.0;
    std::vector<double> grad(v.size(), 0.0);
    const double inv = 1.0 / static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double term = -m[i] * (v[i] - vt[i]);
        if (term > 0) {
            loss += term;
            grad[i] = -m[i] * inv;
        }
    }
    return {loss * inv, std::move(grad)};
}

FdCheckReport fd_gradient_check(std::vector<DenseLayer>& stack, const OutputLoss& loss,
                                const std::vector<double>& input, double step, double tolerance) {
    StackCache cache;
    std::mt19937_64 unused(0);
    DropoutSpec off{0.0, false};
    std::vector<double> out = forward(stack, input, off, unused, cache);
    auto [base, dout] = loss(out);
    (void)base;
    StackGrads analytic = backward(stack, cache, dout);

    auto eval = [&]() {
        StackCache c;
        return loss(forward(stack, input, off, unused, c)).first;
    };

    FdCheckReport rep;
    rep.tolerance = tolerance;
    auto probe = [&](std::vector<double>& params, const std::vector<double>& grad, int layer_id) {
        for (std::size_t i = 0; i < params.size(); ++i) {
            double saved = params[i];
            params[i] = saved + step;
            double up = eval();
            params[i] = saved - step;
            double down = eval();
            params[i] = saved;
            double fd = (up - down) / (2.0 * step);
            double a = grad[i];
            double rel = std::abs(a - fd) / std::max({std::abs(a), std::abs(fd), 1e-6});
            if (rel > rep.worst_rel_err) {
                rep.worst_rel_err = rel;
                rep.worst_layer = layer_id;
                rep.worst_param = i;
            }
        }
    };
    for (std::size_t l = 0; l < stack.size(); ++l) {
        if (!stack[l].trainable) continue;
        probe(stack[l].W, analytic.dW[l], static_cast<int>(l));
        if (!stack[l].b.empty()) probe(stack[l].b, analytic.db[l], static_cast<int>(l));
    }
    rep.pass = rep.worst_rel_err <= tolerance;
    return rep;
}

}  // namespace cudg
