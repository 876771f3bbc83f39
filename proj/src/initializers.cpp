#include "cudg/initializers.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace cudg {

std::string to_string(InitMethod m) {
    return m == InitMethod::scaling ? "scaling" : "fr";
}

InitMethod init_method_from_string(const std::string& s) {
    if (s == "scaling") return InitMethod::scaling;
    if (s == "fr") return InitMethod::fr;
    throw std::invalid_argument("unknown initializer '" + s + "' (expected scaling or fr)");
}

void FrConfig::validate() const {
    if (k <= 0) throw std::invalid_argument("FrConfig: k must be > 0");
    if (iterations < 0) throw std::invalid_argument("FrConfig: iterations must be >= 0");
    if (dim != 2 && dim != 3) throw std::invalid_argument("FrConfig: dim must be 2 or 3");
}

Embedding scale_to_disk(const Embedding& in, double L, int target_dim) {
    if (in.n < 1) throw std::invalid_argument("scale_to_disk: need at least one point");
    if (target_dim != 2 && target_dim != 3) throw std::invalid_argument("scale_to_disk: target_dim must be 2 or 3");
    if (target_dim < in.dim) throw std::invalid_argument("scale_to_disk: cannot drop coordinate axes");

    std::vector<double> centroid(in.dim, 0.0);
    for (int v = 0; v < in.n; ++v)
        for (int a = 0; a < in.dim; ++a) centroid[a] += in.at(v, a);
    for (double& c : centroid) c /= in.n;

    double max_norm = 0.0;
    for (int v = 0; v < in.n; ++v) {
        double sq = 0.0;
        for (int a = 0; a < in.dim; ++a) {
            double d = in.at(v, a) - centroid[a];
            sq += d * d;
        }
        max_norm = std::max(max_norm, std::sqrt(sq));
    }
    double scale = max_norm > 1e-12 ? L / max_norm : 0.0;

    Embedding out(in.n, target_dim);
    for (int v = 0; v < in.n; ++v)
        for (int a = 0; a < in.dim; ++a) out.at(v, a) = (in.at(v, a) - centroid[a]) * scale;
    return out;
}

Embedding fr_layout_from(const Graph& g, Embedding pos, const FrConfig& cfg) {
    cfg.validate();
    if (pos.n != g.n() || pos.dim != cfg.dim)
        throw std::invalid_argument("fr_layout_from: starting positions do not match graph/config");

    const int n = g.n();
    const int dim = cfg.dim;
    const double k = cfg.k;

    // Initial layout extent sets the starting temperature; cooling is linear.
    double lo = pos.coords.empty() ? 0.0 : *std::min_element(pos.coords.begin(), pos.coords.end());
    double hi = pos.coords.empty() ? 0.0 : *std::max_element(pos.coords.begin(), pos.coords.end());
    double t = 0.1 * std::max(hi - lo, 1e-12);
    const double dt = t / (cfg.iterations + 1);

    std::mt19937_64 jitter_rng(mix_seed(cfg.seed, 0x6a69747465ULL));
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);

    std::vector<double> disp(static_cast<std::size_t>(n) * dim);
    std::vector<double> delta(dim);
    for (int it = 0; it < cfg.iterations; ++it) {
        std::fill(disp.begin(), disp.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double d2 = 0.0;
                for (int a = 0; a < dim; ++a) {
                    delta[a] = pos.at(i, a) - pos.at(j, a);
                    d2 += delta[a] * delta[a];
                }
                double d = std::sqrt(d2);
                if (d < 1e-9) {
                    d2 = 0.0;
                    for (int a = 0; a < dim; ++a) {
                        delta[a] = 1e-6 * jitter(jitter_rng);
                        d2 += delta[a] * delta[a];
                    }
                    d = std::sqrt(d2);
                }
                double force = k * k / (d * d);               // repulsion, all pairs
                if (g.adjacent(i, j)) force -= d / k;         // attraction on edges
                for (int a = 0; a < dim; ++a) {
                    double f = delta[a] / d * force;
                    disp[static_cast<std::size_t>(i) * dim + a] += f;
                    disp[static_cast<std::size_t>(j) * dim + a] -= f;
                }
            }
        }
        for (int i = 0; i < n; ++i) {
            double norm2 = 0.0;
            for (int a = 0; a < dim; ++a) {
                double d = disp[static_cast<std::size_t>(i) * dim + a];
                norm2 += d * d;
            }
            double norm = std::sqrt(norm2);
            if (norm < 1e-12) continue;
            double step = std::min(norm, t) / norm;
            for (int a = 0; a < dim; ++a) pos.at(i, a) += disp[static_cast<std::size_t>(i) * dim + a] * step;
        }
        t -= dt;
    }
    return pos;
}

Embedding fr_layout(const Graph& g, const FrConfig& cfg) {
    cfg.validate();
    Embedding pos(g.n(), cfg.dim);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double& c : pos.coords) c = unit(rng);
    return fr_layout_from(g, std::move(pos), cfg);
}

Embedding fruchterman_reingold(const Graph& g, const FrConfig& cfg, double L) {
    return scale_to_disk(fr_layout(g, cfg), L, cfg.dim);
}

}  // namespace cudg
