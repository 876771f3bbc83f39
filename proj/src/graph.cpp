#include "cudg/graph.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace cudg {

std::size_t pair_index(int i, int j, int n) {
    if (i < 0 || i >= j || j >= n) {
        throw std::invalid_argument("pair_index: need 0 <= i < j < n, got i=" + std::to_string(i) +
                                    " j=" + std::to_string(j) + " n=" + std::to_string(n));
    }
    std::size_t si = static_cast<std::size_t>(i);
    return si * (n - 1) - si * (si - 1) / 2 + static_cast<std::size_t>(j) - si - 1;
}

Graph::Graph(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("Graph: vertex count must be >= 1");
    adj_.assign(static_cast<std::size_t>(n) * n, 0);
    degree_.assign(n, 0);
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
    for (auto [i, j] : edges) add_edge(i, j);
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("Graph: vertex " + std::to_string(v) + " out of range");
}

void Graph::add_edge(int i, int j) {
    check_vertex(i);
    check_vertex(j);
    if (i == j) throw std::invalid_argument("Graph: self-loops not allowed");
    if (i > j) std::swap(i, j);
    std::pair<int, int> e{i, j};
    auto pos = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (pos != edges_.end() && *pos == e) return;
    edges_.insert(pos, e);
    adj_[static_cast<std::size_t>(i) * n_ + j] = 1;
    adj_[static_cast<std::size_t>(j) * n_ + i] = 1;
    ++degree_[i];
    ++degree_[j];
}

bool Graph::adjacent(int i, int j) const {
    check_vertex(i);
    check_vertex(j);
    return adj_[static_cast<std::size_t>(i) * n_ + j] != 0;
}

int Graph::degree(int v) const {
    check_vertex(v);
    return degree_[v];
}

int Graph::max_degree() const {
    return *std::max_element(degree_.begin(), degree_.end());
}

bool Graph::connected() const {
    std::vector<std::uint8_t> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n_; ++w) {
            if (adj_[static_cast<std::size_t>(v) * n_ + w] && !seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n_;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

namespace {

// Clique / independent-set recursion on the complement of g restricted to
// verts. Pivot = lowest vertex id, so the result is deterministic.
// Returned pair: (clique in complement, independent set in complement);
// the latter is a clique of g.
std::pair<std::vector<int>, std::vector<int>> ramsey_complement(const Graph& g, const std::vector<int>& verts) {
    if (verts.empty()) return {{}, {}};
    int pivot = verts.front();
    std::vector<int> nbrs, rest;
    for (std::size_t k = 1; k < verts.size(); ++k) {
        int v = verts[k];
        // complement adjacency
        (!g.adjacent(pivot, v) ? nbrs : rest).push_back(v);
    }
    auto [c1, i1] = ramsey_complement(g, nbrs);
    auto [c2, i2] = ramsey_complement(g, rest);
    c1.push_back(pivot);
    i2.push_back(pivot);
    return {c1.size() >= c2.size() ? std::move(c1) : std::move(c2),
            i1.size() >= i2.size() ? std::move(i1) : std::move(i2)};
}

}  // namespace

std::vector<int> approx_max_clique(const Graph& g) {
    std::vector<int> remaining(g.n());
    for (int v = 0; v < g.n(); ++v) remaining[v] = v;

    std::vector<int> best;
    while (!remaining.empty()) {
        auto [comp_clique, clique] = ramsey_complement(g, remaining);
        if (clique.size() > best.size()) best = clique;
        // remove the complement clique and retry on what is left
        std::vector<std::uint8_t> drop(g.n(), 0);
        for (int v : comp_clique) drop[v] = 1;
        std::erase_if(remaining, [&](int v) { return drop[v] != 0; });
    }
    std::sort(best.begin(), best.end());
    return best;
}

ConditionReport check_necessary_conditions(const Graph& g) {
    ConditionReport r;
    r.clique_estimate = static_cast<int>(approx_max_clique(g).size());
    r.max_degree = g.max_degree();
    r.connected = g.connected();
    r.accepted = r.clique_estimate <= kMaxCliqueBound && r.max_degree <= kMaxDegreeBound && r.connected;
    return r;
}

void GeneratorConfig::validate() const {
    if (n < 1) throw std::invalid_argument("GeneratorConfig: n must be >= 1");
    if (l <= 0) throw std::invalid_argument("GeneratorConfig: l must be > 0");
    if (d <= 0) throw std::invalid_argument("GeneratorConfig: d must be > 0");
    if (max_retries < 1) throw std::invalid_argument("GeneratorConfig: max_retries must be >= 1");
}

Graph graph_from_points(const std::vector<double>& pts, double d) {
    if (pts.size() % 2 != 0) throw std::invalid_argument("graph_from_points: need n x 2 coordinates");
    const int n = static_cast<int>(pts.size() / 2);
    const double d2 = d * d;
    Graph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double dx = pts[2 * i] - pts[2 * j];
            double dy = pts[2 * i + 1] - pts[2 * j + 1];
            if (dx * dx + dy * dy <= d2) g.add_edge(i, j);
        }
    }
    return g;
}

GeneratedInstance generate_instance(const GeneratorConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, cfg.l);

    ConditionReport last;
    for (int attempt = 1; attempt <= cfg.max_retries; ++attempt) {
        std::vector<double> pts(static_cast<std::size_t>(cfg.n) * 2);
        for (double& c : pts) c = unit(rng);

        Graph g = graph_from_points(pts, cfg.d);
        last = check_necessary_conditions(g);
        if (last.accepted) return {std::move(g), std::move(pts), last, attempt};
    }

    std::string why;
    if (last.clique_estimate > kMaxCliqueBound)
        why += " clique_estimate " + std::to_string(last.clique_estimate) + " > " + std::to_string(kMaxCliqueBound) + ";";
    if (last.max_degree > kMaxDegreeBound)
        why += " max_degree " + std::to_string(last.max_degree) + " > " + std::to_string(kMaxDegreeBound) + ";";
    if (!last.connected) why += " graph disconnected;";
    throw GenerationError("instance generation failed for n=" + std::to_string(cfg.n) + " after " +
                          std::to_string(cfg.max_retries) + " attempts; last rejection:" + why);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace cudg
