#include "cudg/den.hpp"

#include <stdexcept>
#include <string>

namespace cudg {

std::vector<double> DistanceCalculator::forward(const std::vector<double>& I, std::vector<double>& u) const {
    if (I.size() != static_cast<std::size_t>(n) * N)
        throw std::invalid_argument("distance calculator: input length mismatch");
    const std::size_t C = pairs();
    u.assign(diff_width(), 0.0);
    std::vector<double> v(C, 0.0);
    for (int a = 0; a < N; ++a) {
        const double* axis = I.data() + static_cast<std::size_t>(a) * n;
        double* ua = u.data() + static_cast<std::size_t>(a) * C;
        std::size_t k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++k) {
                double d = axis[i] - axis[j];
                ua[k] = d;
                v[k] += d * d;
            }
    }
    return v;
}

std::vector<double> DistanceCalculator::forward(const std::vector<double>& I) const {
    std::vector<double> u;
    return forward(I, u);
}

std::vector<double> DistanceCalculator::backward(const std::vector<double>& dv,
                                                 const std::vector<double>& u) const {
    const std::size_t C = pairs();
    if (dv.size() != C || u.size() != diff_width())
        throw std::invalid_argument("distance calculator: backward shape mismatch");
    std::vector<double> dI(static_cast<std::size_t>(n) * N, 0.0);
    for (int a = 0; a < N; ++a) {
        const double* ua = u.data() + static_cast<std::size_t>(a) * C;
        double* da = dI.data() + static_cast<std::size_t>(a) * n;
        std::size_t k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++k) {
                double g = dv[k] * 2.0 * ua[k];
                da[i] += g;
                da[j] -= g;
            }
    }
    return dI;
}

std::vector<double> DistanceCalculator::difference_weights() const {
    const std::size_t C = pairs();
    const std::size_t in = static_cast<std::size_t>(n) * N;
    std::vector<double> W(diff_width() * in, 0.0);
    for (int a = 0; a < N; ++a)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                std::size_t row = static_cast<std::size_t>(a) * C + pair_index(i, j, n);
                W[row * in + static_cast<std::size_t>(a) * n + i] = 1.0;
                W[row * in + static_cast<std::size_t>(a) * n + j] = -1.0;
            }
    return W;
}

std::vector<double> DistanceCalculator::sum_weights() const {
    const std::size_t C = pairs();
    std::vector<double> W(C * diff_width(), 0.0);
    for (std::size_t k = 0; k < C; ++k)
        for (int a = 0; a < N; ++a) W[k * diff_width() + static_cast<std::size_t>(a) * C + k] = 1.0;
    return W;
}

DistanceCalculator make_distance_calculator(int n, int N) {
    if (n < 2) throw std::invalid_argument("distance calculator: need n >= 2");
    if (N != 2 && N != 3) throw std::invalid_argument("distance calculator: N must be 2 or 3");
    DistanceCalculator calc{n, N};
    // Every difference-layer slot must be assigned by exactly one pair/axis.
    std::vector<std::uint8_t> hit(calc.diff_width(), 0);
    for (int a = 0; a < N; ++a)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                std::size_t slot = static_cast<std::size_t>(a) * calc.pairs() + pair_index(i, j, n);
                if (hit[slot]) throw std::logic_error("distance calculator: index map not injective");
                hit[slot] = 1;
            }
    for (auto h : hit)
        if (!h) throw std::logic_error("distance calculator: index map not surjective");
    return calc;
}

DenModel build_den(int n, int N, double L, double p_drop) {
    if (n < 2) throw std::invalid_argument("build_den: need n >= 2");
    if (N != 2 && N != 3) throw std::invalid_argument("build_den: N must be 2 or 3");
    if (L <= 0) throw std::invalid_argument("build_den: L must be > 0");
    if (p_drop < 0 || p_drop >= 1) throw std::invalid_argument("build_den: p_drop must be in [0, 1)");

    DenModel model;
    model.n = n;
    model.N = N;
    model.L = L;
    model.p_drop = p_drop;

    const int io = n * N;
    const int widths[] = {io, 64, 36, 18, 9, 18, 36, 64, io};
    const int n_layers = 8;
    for (int l = 0; l < n_layers; ++l) {
        Activation act = l + 1 == n_layers ? Activation::scaled_tanh : Activation::relu;
        model.autoencoder.push_back(make_dense(widths[l], widths[l + 1], act, true, true, L));
    }
    model.calculator = make_distance_calculator(n, N);
    return model;
}

std::vector<double> flatten_coords(const Embedding& emb) {
    std::vector<double> I(static_cast<std::size_t>(emb.n) * emb.dim);
    for (int a = 0; a < emb.dim; ++a)
        for (int v = 0; v < emb.n; ++v) I[static_cast<std::size_t>(a) * emb.n + v] = emb.at(v, a);
    return I;
}

Embedding unflatten_coords(const std::vector<double>& I, int n, int dim) {
    if (I.size() != static_cast<std::size_t>(n) * dim)
        throw std::invalid_argument("unflatten_coords: expected " + std::to_string(n * dim) +
                                    " values, got " + std::to_string(I.size()));
    Embedding emb(n, dim);
    for (int a = 0; a < dim; ++a)
        for (int v = 0; v < n; ++v) emb.at(v, a) = I[static_cast<std::size_t>(a) * n + v];
    return emb;
}

DenForward den_forward(const DenModel& model, const std::vector<double>& I, bool training,
                       std::mt19937_64& rng) {
    DenForward f;
    DropoutSpec spec{training ? model.p_drop : 0.0, training};
    f.coords_flat = forward(model.autoencoder, I, spec, rng, f.cache);
    f.v = model.calculator.forward(f.coords_flat, f.u);
    return f;
}

StackGrads den_backward(const DenModel& model, const DenForward& fwd, const std::vector<double>& dv) {
    std::vector<double> dcoords = model.calculator.backward(dv, fwd.u);
    return backward(model.autoencoder, fwd.cache, dcoords);
}

}  // namespace cudg
