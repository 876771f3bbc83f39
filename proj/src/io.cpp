#include "cudg/io.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cudg {

using nlohmann::json;

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

json coords_to_json(const std::vector<double>& coords, int n, int dim) {
    json arr = json::array();
    for (int v = 0; v < n; ++v) {
        json pt = json::array();
        for (int a = 0; a < dim; ++a) pt.push_back(coords[static_cast<std::size_t>(v) * dim + a]);
        arr.push_back(std::move(pt));
    }
    return arr;
}

json config_to_json(const TrialConfig& cfg) {
    return json{{"lr", cfg.lr},       {"p_drop", cfg.p_drop}, {"init", to_string(cfg.init)},
                {"epochs", cfg.epochs}, {"dim", cfg.dim},       {"seed", cfg.seed}};
}

std::string iso8601_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string dataset_to_json(const Dataset& ds) {
    json j;
    j["params"] = {{"n_list", ds.n_list}, {"count_per_n", ds.per_n}, {"seed", ds.seed},
                   {"d", ds.d},           {"l_factor", ds.l_factor}};
    json graphs = json::array();
    for (const DatasetEntry& e : ds.entries) {
        json edges = json::array();
        for (auto [i, k] : e.graph.edges()) edges.push_back(json::array({i, k}));
        graphs.push_back({{"id", e.id},
                          {"n", e.graph.n()},
                          {"edges", std::move(edges)},
                          {"coords", coords_to_json(e.coords, e.graph.n(), 2)}});
    }
    j["graphs"] = std::move(graphs);
    return j.dump(2) + "\n";
}

Dataset dataset_from_json(const std::string& text) {
    json j = json::parse(text);
    Dataset ds;
    const json& p = j.at("params");
    ds.n_list = p.at("n_list").get<std::vector<int>>();
    ds.per_n = p.at("count_per_n").get<int>();
    ds.seed = p.at("seed").get<std::uint64_t>();
    ds.d = p.at("d").get<double>();
    ds.l_factor = p.at("l_factor").get<double>();
    for (const json& ge : j.at("graphs")) {
        DatasetEntry e;
        e.id = ge.at("id").get<int>();
        int n = ge.at("n").get<int>();
        std::vector<std::pair<int, int>> edges;
        for (const json& ed : ge.at("edges")) edges.emplace_back(ed.at(0).get<int>(), ed.at(1).get<int>());
        e.graph = Graph(n, edges);
        e.coords.reserve(static_cast<std::size_t>(n) * 2);
        const json& cs = ge.at("coords");
        if (static_cast<int>(cs.size()) != n)
            throw std::runtime_error("dataset: coords row count does not match n");
        for (const json& pt : cs) {
            e.coords.push_back(pt.at(0).get<double>());
            e.coords.push_back(pt.at(1).get<double>());
        }
        ds.entries.push_back(std::move(e));
    }
    return ds;
}

std::string report_to_json(const FeasibilityReport& rep, const Graph& g) {
    json violations = json::array();
    const int n = g.n();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rep.delta[pair_index(i, j, n)]) violations.push_back(json::array({i, j}));
    json j{{"feasible", rep.feasible},
           {"coord_domain_ok", rep.coord_domain_ok},
           {"d_adj", rep.d_adj},
           {"d_nadj", rep.d_nadj},
           {"gap", rep.gap},
           {"objective", rep.objective},
           {"violations", std::move(violations)}};
    return j.dump(2) + "\n";
}

std::string trial_to_json(const TrialConfig& cfg, const TrialResult& res) {
    json j;
    j["config"] = config_to_json(cfg);
    j["success"] = res.success;
    j["first_feasible_epoch"] = res.success ? json(res.first_feasible_epoch) : json(nullptr);
    j["best_gap"] = res.success ? json(res.best_gap) : json(nullptr);
    j["best_coords"] = res.success
                           ? coords_to_json(res.best_embedding.coords, res.best_embedding.n, res.best_embedding.dim)
                           : json(nullptr);
    j["traces"] = {{"alpha", res.alpha_trace},
                   {"elf", res.elf_trace},
                   {"gap", res.gap_trace},
                   {"feasible", res.feasible_trace},
                   {"epoch_wall_s", res.epoch_wall_s}};
    return j.dump(2) + "\n";
}

std::string sweep_to_json(const SweepSummary& s, int graph_id) {
    json trials = json::array();
    for (const TrialRecord& rec : s.trials) {
        trials.push_back({{"trial_index", rec.trial_index},
                          {"config", config_to_json(rec.config)},
                          {"success", rec.result.success},
                          {"first_feasible_epoch",
                           rec.result.success ? json(rec.result.first_feasible_epoch) : json(nullptr)},
                          {"best_gap", rec.result.success ? json(rec.result.best_gap) : json(nullptr)},
                          {"mean_epoch_ms", rec.result.mean_epoch_ms()}});
    }
    json best(nullptr);
    if (s.success) {
        const TrialResult& br = s.trials[s.best_trial].result;
        best = json{{"trial_index", s.best_trial},
                    {"gap", s.best_gap},
                    {"coords", coords_to_json(br.best_embedding.coords, br.best_embedding.n,
                                              br.best_embedding.dim)}};
    }
    json j{{"graph_id", graph_id}, {"n", s.n},        {"N", s.dim},
           {"success", s.success}, {"best", std::move(best)}, {"trials", std::move(trials)}};
    return j.dump(2) + "\n";
}

namespace {

struct Bucket {
    int graphs = 0;
    int feasible_graphs = 0;
    int trials = 0;
    int feasible_trials = 0;
    double sum_first_epoch = 0.0;
    double sum_best_gap = 0.0;
    double max_best_gap = 0.0;
    double sum_trial_s = 0.0;
    double sum_epoch_ms = 0.0;
};

std::map<std::pair<int, int>, Bucket> bucket_sweeps(const std::vector<std::pair<int, SweepSummary>>& sweeps) {
    std::map<std::pair<int, int>, Bucket> by_n;
    for (const auto& [id, s] : sweeps) {
        (void)id;
        Bucket& b = by_n[{s.n, s.dim}];
        ++b.graphs;
        if (s.success) {
            ++b.feasible_graphs;
            b.sum_best_gap += s.best_gap;
            b.max_best_gap = std::max(b.max_best_gap, s.best_gap);
        }
        for (const TrialRecord& rec : s.trials) {
            ++b.trials;
            if (rec.result.success) {
                ++b.feasible_trials;
                b.sum_first_epoch += rec.result.first_feasible_epoch;
            }
            b.sum_trial_s += rec.result.total_wall_s();
        }
        b.sum_epoch_ms += s.mean_epoch_ms;
    }
    return by_n;
}

}  // namespace

std::string aggregate_csv(const std::vector<std::pair<int, SweepSummary>>& sweeps) {
    std::ostringstream out;
    out << "n,dim,graphs,feasible_graphs,success_pct,trials,feasible_trials,"
           "mean_first_feasible_epoch,mean_best_gap,max_best_gap\n";
    for (const auto& [key, b] : bucket_sweeps(sweeps)) {
        out << key.first << ',' << key.second << ',' << b.graphs << ',' << b.feasible_graphs << ','
            << fmt("%.1f", b.graphs ? 100.0 * b.feasible_graphs / b.graphs : 0.0) << ',' << b.trials
            << ',' << b.feasible_trials << ',';
        if (b.feasible_trials > 0) out << fmt("%.2f", b.sum_first_epoch / b.feasible_trials);
        out << ',';
        if (b.feasible_graphs > 0)
            out << fmt("%.6g", b.sum_best_gap / b.feasible_graphs) << ',' << fmt("%.6g", b.max_best_gap);
        else
            out << ',';
        out << '\n';
    }
    return out.str();
}

std::string timing_csv(const std::vector<std::pair<int, SweepSummary>>& sweeps) {
    std::ostringstream out;
    out << "n,dim,graphs,mean_trial_s,mean_epoch_ms\n";
    for (const auto& [key, b] : bucket_sweeps(sweeps)) {
        double mean_trial = b.trials ? b.sum_trial_s / b.trials : 0.0;
        double mean_epoch = b.graphs ? b.sum_epoch_ms / b.graphs : 0.0;
        out << key.first << ',' << key.second << ',' << b.graphs << ',' << fmt("%.6g", mean_trial)
            << ',' << fmt("%.6g", mean_epoch) << '\n';
    }
    return out.str();
}

std::string manifest_to_json(const RunManifest& m) {
    json j{{"command", m.command},
           {"config", m.config_json.empty() ? json(nullptr) : json::parse(m.config_json)},
           {"dataset", m.dataset_path},
           {"outputs", m.outputs},
           {"master_seed", m.master_seed},
           {"tool_version", kToolVersion},
           {"timestamp", iso8601_now()}};
    return j.dump(2) + "\n";
}

void save_text(const std::string& path, const std::string& text) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << text;
        if (!out.good()) throw std::runtime_error("write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move temporary file into '" + path + "'");
    }
}

std::string load_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace cudg
