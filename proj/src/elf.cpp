#include "cudg/elf.hpp"

#include <algorithm>
#include <stdexcept>

#include "cudg/neural.hpp"

namespace cudg {

ElfState build_targets(const Graph& g, const DomainParams& params, double alpha) {
    params.validate();
    if (alpha < params.epsilon) throw std::invalid_argument("build_targets: alpha must be >= epsilon");
    const int n = g.n();
    ElfState st;
    st.alpha = alpha;
    st.vt_min.resize(pair_count(n));
    st.vt_max.resize(pair_count(n));
    const double lo_adj = params.d_min * params.d_min;
    const double hi_adj = params.d_adj * params.d_adj;
    const double lo_nadj = (params.d_adj + alpha) * (params.d_adj + alpha);
    const double hi_nadj = 4.0 * params.L * params.L;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::size_t k = pair_index(i, j, n);
            if (g.adjacent(i, j)) {
                st.vt_min[k] = lo_adj;
                st.vt_max[k] = hi_adj;
            } else {
                st.vt_min[k] = lo_nadj;
                st.vt_max[k] = hi_nadj;
            }
        }
    return st;
}

std::pair<double, std::vector<double>> elf(const std::vector<double>& v, const ElfState& state) {
    if (v.size() != state.vt_min.size() || v.size() != state.vt_max.size())
        throw std::invalid_argument("elf: squared-distance vector length mismatch");
    std::vector<double> m_pos(v.size(), 1.0), m_neg(v.size(), -1.0);
    auto [lo, dlo] = margin_ranking_loss(v, state.vt_min, m_pos);
    auto [hi, dhi] = margin_ranking_loss(v, state.vt_max, m_neg);
    std::vector<double> grad(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) grad[k] = dlo[k] + dhi[k];
    return {lo + hi, std::move(grad)};
}

bool update_alpha(ElfState& state, const FeasibilityReport& report, const Graph& g,
                  const DomainParams& params) {
    if (!report.feasible)
        throw std::invalid_argument("update_alpha: report must come from a feasible inference step");
    double candidate = std::max(params.epsilon, report.d_nadj - params.d_adj);
    if (candidate <= state.alpha) return false;
    state = build_targets(g, params, candidate);
    return true;
}

}  // namespace cudg
