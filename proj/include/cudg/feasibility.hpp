#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cudg/graph.hpp"

namespace cudg {

// Hardware feasibility domain: blockade range, register radius, slack terms.
struct DomainParams {
    double d_min = 4.0;     // minimum pair separation (um)
    double d_adj = 10.26;   // unit disk radius / max adjacent distance (um)
    double L = 50.0;        // register radius, coords live in [-L, L]^N (um)
    double epsilon = 0.1;   // strict-inequality slack for non-adjacent pairs (um)
    double iota = 1.0;      // penalty margin

    void validate() const;
    // Penalty applied per violated pair constraint; dominates any attainable gap.
    double penalty() const { return 2.0 * L - d_min + iota; }
};

// Candidate placement: n points by dim coordinates, point-major storage.
struct Embedding {
    int n = 0;
    int dim = 2;
    std::vector<double> coords;  // coords[v * dim + axis]

    Embedding() = default;
    Embedding(int n_, int dim_) : n(n_), dim(dim_), coords(static_cast<std::size_t>(n_) * dim_, 0.0) {}

    double at(int v, int axis) const { return coords[static_cast<std::size_t>(v) * dim + axis]; }
    double& at(int v, int axis) { return coords[static_cast<std::size_t>(v) * dim + axis]; }
};

struct FeasibilityReport {
    std::vector<std::uint8_t> delta;  // per-pair violation flags, indexed by pair_index
    double d_adj = 0.0;               // max distance over adjacent pairs (um)
    double d_nadj = 0.0;              // min distance over non-adjacent pairs (um)
    double gap = 0.0;                 // d_nadj - d_adj
    double objective = 0.0;
    bool feasible = false;
    bool coord_domain_ok = false;

    int violation_count() const;
};

// Evaluates every pair constraint on squared distances: adjacent pairs must
// land in [d_min, d_adj], non-adjacent in [d_adj + epsilon, 2L]; each
// coordinate component must lie in [-L, L]. Degenerate pair sets fall back to
// the variable domain bounds (d_adj := d_min without edges, d_nadj := 2L
// without non-adjacent pairs).
FeasibilityReport check_embedding(const Graph& g, const Embedding& emb, const DomainParams& params);

double adjacency_gap(const Graph& g, const Embedding& emb, const DomainParams& params);

double objective_value(const FeasibilityReport& report, const DomainParams& params);

}  // namespace cudg
