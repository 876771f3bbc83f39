#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cudg {

// Lexicographic rank of the unordered pair {i,j} (i<j) among all C(n,2) pairs.
// Bijective onto {0, ..., C(n,2)-1}.
std::size_t pair_index(int i, int j, int n);

inline std::size_t pair_count(int n) {
    return static_cast<std::size_t>(n) * (n - 1) / 2;
}

// Undirected simple graph, vertices labeled 0..n-1. Edge list (i<j, sorted
// lexicographically) and the symmetric adjacency matrix are kept consistent.
class Graph {
public:
    explicit Graph(int n);
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int n() const { return n_; }
    std::size_t pairs() const { return pair_count(n_); }
    std::size_t edge_count() const { return edges_.size(); }

    void add_edge(int i, int j);
    bool adjacent(int i, int j) const;
    int degree(int v) const;
    int max_degree() const;
    bool connected() const;

    // Edges as {i,j} with i<j, sorted lexicographically.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

private:
    void check_vertex(int v) const;

    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::uint8_t> adj_;  // n x n
    std::vector<int> degree_;
};

Graph complete_graph(int n);

// Hexagonal-packing bounds for the default hardware geometry
// (D_min = 4, D_adj = 10.26): a complete subgraph larger than 7 vertices or a
// vertex with more than 18 neighbours cannot be realized.
inline constexpr int kMaxCliqueBound = 7;
inline constexpr int kMaxDegreeBound = 18;

// Ramsey-style clique / independent-set recursion with iterative clique
// removal, run on the complement graph. Returns a valid clique in polynomial
// time; its size is a lower bound on the true maximum clique.
std::vector<int> approx_max_clique(const Graph& g);

struct ConditionReport {
    int clique_estimate = 0;  // lower bound, so "accepted" means the gate
                              // passed, not that the graph is certified
                              // embeddable
    int max_degree = 0;
    bool connected = false;
    bool accepted = false;
};

ConditionReport check_necessary_conditions(const Graph& g);

struct GeneratorConfig {
    int n = 10;
    double l = 1.0;  // square-domain side, generator units
    double d = 1.0;  // edge threshold distance, generator units
    std::uint64_t seed = 0;
    int max_retries = 200;

    void validate() const;
};

struct GeneratedInstance {
    Graph graph;
    std::vector<double> coords;  // n x 2 row-major, generator units
    ConditionReport report;
    int attempts = 0;
};

class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Threshold rule: vertices are the points (n x 2, point-major), an edge joins
// every pair within Euclidean distance d.
Graph graph_from_points(const std::vector<double>& pts, double d);

// Samples n points uniformly in [0,l]^2, pairs every two points within
// distance d by an edge, and resamples from scratch until the necessary
// conditions hold or the retry budget runs out.
GeneratedInstance generate_instance(const GeneratorConfig& cfg);

// splitmix64-style mixer for deriving independent RNG streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace cudg
