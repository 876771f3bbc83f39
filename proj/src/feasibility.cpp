#include "cudg/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cudg {

void DomainParams::validate() const {
    if (!(0 < d_min && d_min < d_adj && d_adj < 2 * L))
        throw std::invalid_argument("DomainParams: need 0 < d_min < d_adj < 2L");
    if (epsilon <= 0) throw std::invalid_argument("DomainParams: epsilon must be > 0");
    if (iota <= 0) throw std::invalid_argument("DomainParams: iota must be > 0");
}

int FeasibilityReport::violation_count() const {
    int c = 0;
    for (auto f : delta) c += f;
    return c;
}

FeasibilityReport check_embedding(const Graph& g, const Embedding& emb, const DomainParams& params) {
    params.validate();
    if (emb.n != g.n())
        throw std::invalid_argument("check_embedding: embedding has " + std::to_string(emb.n) +
                                    " points but graph has " + std::to_string(g.n()));
    if (emb.dim != 2 && emb.dim != 3)
        throw std::invalid_argument("check_embedding: dimensionality must be 2 or 3");
    if (emb.coords.size() != static_cast<std::size_t>(emb.n) * emb.dim)
        throw std::invalid_argument("check_embedding: coordinate buffer size mismatch");

    const int n = g.n();
    const double min_sq = params.d_min * params.d_min;
    const double adj_sq = params.d_adj * params.d_adj;
    const double nadj_lo_sq = (params.d_adj + params.epsilon) * (params.d_adj + params.epsilon);
    const double diam = 2.0 * params.L;
    const double diam_sq = diam * diam;

    FeasibilityReport r;
    r.delta.assign(pair_count(n), 0);

    double adj_max_sq = -1.0;
    double nadj_min_sq = -1.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double sq = 0.0;
            for (int a = 0; a < emb.dim; ++a) {
                double diff = emb.at(i, a) - emb.at(j, a);
                sq += diff * diff;
            }
            if (g.adjacent(i, j)) {
                if (!(min_sq <= sq && sq <= adj_sq)) r.delta[pair_index(i, j, n)] = 1;
                adj_max_sq = std::max(adj_max_sq, sq);
            } else {
                if (!(nadj_lo_sq <= sq && sq <= diam_sq)) r.delta[pair_index(i, j, n)] = 1;
                nadj_min_sq = nadj_min_sq < 0 ? sq : std::min(nadj_min_sq, sq);
            }
        }
    }

    r.d_adj = adj_max_sq < 0 ? params.d_min : std::sqrt(adj_max_sq);
    r.d_nadj = nadj_min_sq < 0 ? diam : std::sqrt(nadj_min_sq);
    r.gap = r.d_nadj - r.d_adj;

    r.coord_domain_ok = std::all_of(emb.coords.begin(), emb.coords.end(), [&](double c) {
        return std::isfinite(c) && -params.L <= c && c <= params.L;
    });
    r.feasible = r.violation_count() == 0 && r.coord_domain_ok;
    r.objective = objective_value(r, params);
    return r;
}

double adjacency_gap(const Graph& g, const Embedding& emb, const DomainParams& params) {
    return check_embedding(g, emb, params).gap;
}

double objective_value(const FeasibilityReport& report, const DomainParams& params) {
    return params.penalty() * report.violation_count() + report.d_adj - report.d_nadj;
}

}  // namespace cudg
