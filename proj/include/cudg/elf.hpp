#pragma once

#include <utility>
#include <vector>

#include "cudg/feasibility.hpp"
#include "cudg/graph.hpp"

namespace cudg {

// Per-pair squared-distance targets plus the adjacency-gap parameter alpha.
struct ElfState {
    std::vector<double> vt_min;  // lower-bound targets (um^2)
    std::vector<double> vt_max;  // upper-bound targets (um^2)
    double alpha = 0.0;          // um, >= epsilon
};

// Adjacent pair k: vt_min = d_min^2, vt_max = d_adj^2.
// Non-adjacent pair k: vt_min = (d_adj + alpha)^2, vt_max = (2L)^2.
ElfState build_targets(const Graph& g, const DomainParams& params, double alpha);

// Margin-ranking sum of the lower-bound term (m = +1 against vt_min) and the
// upper-bound term (m = -1 against vt_max), both averaged over all pairs.
std::pair<double, std::vector<double>> elf(const std::vector<double>& v, const ElfState& state);

// After a feasible inference step, raises alpha to the achieved non-adjacent
// margin d_nadj - d_adj when that improves on the current value. New targets
// take effect from the state returned here. Returns true when alpha grew.
// Calling with an infeasible report is a contract violation.
bool update_alpha(ElfState& state, const FeasibilityReport& report, const Graph& g,
                  const DomainParams& params);

}  // namespace cudg
