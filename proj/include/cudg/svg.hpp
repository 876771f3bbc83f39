#pragma once

#include <string>

#include "cudg/feasibility.hpp"
#include "cudg/graph.hpp"

namespace cudg {

// Register view: the radius-L register outline, one blockade circle of radius
// d_adj/2 per vertex, and one line per graph edge. Edges follow the adjacency
// matrix, never the geometry; pairs whose geometry contradicts the adjacency
// pattern are flagged (class "mismatch" on edges stretched beyond d_adj,
// "conflict" lines on non-adjacent pairs closer than d_adj). 3D embeddings
// are drawn as their xy projection.
std::string render_register_svg(const Graph& g, const Embedding& emb, const DomainParams& params);

}  // namespace cudg
