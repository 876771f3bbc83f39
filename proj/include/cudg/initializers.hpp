#pragma once

#include <cstdint>
#include <string>

#include "cudg/feasibility.hpp"
#include "cudg/graph.hpp"

namespace cudg {

enum class InitMethod { scaling, fr };

std::string to_string(InitMethod m);
InitMethod init_method_from_string(const std::string& s);

struct FrConfig {
    double k = 7.0;      // equilibrium distance between adjacent nodes (um)
    int iterations = 1000;
    int dim = 2;
    std::uint64_t seed = 0;

    void validate() const;
};

// Centers coords on their centroid and scales uniformly so the farthest point
// sits on the radius-L circle. 2D input with target_dim=3 gets z=0 appended.
// A single point (or fully coincident points) maps to the origin.
Embedding scale_to_disk(const Embedding& in, double L, int target_dim);

// Force-directed layout iterations from explicit starting positions; result is
// NOT rescaled. Repulsion k^2/d^2 acts on every pair, attraction d/k on
// adjacent pairs, per-step displacement capped by a linearly cooling
// temperature.
Embedding fr_layout_from(const Graph& g, Embedding pos, const FrConfig& cfg);

// Same, starting from uniform random positions in the unit square/cube.
Embedding fr_layout(const Graph& g, const FrConfig& cfg);

// Full initializer: random start, force iterations, rescale into the
// radius-L disk. Feasibility of the result is not guaranteed.
Embedding fruchterman_reingold(const Graph& g, const FrConfig& cfg, double L);

}  // namespace cudg
