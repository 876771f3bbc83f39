#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cudg/feasibility.hpp"
#include "cudg/graph.hpp"
#include "cudg/trainer.hpp"

namespace cudg {

inline constexpr const char* kToolVersion = "0.1.0";

struct DatasetEntry {
    int id = 0;
    Graph graph{1};
    std::vector<double> coords;  // n x 2, point-major, generator units
};

struct Dataset {
    std::vector<int> n_list;
    int per_n = 0;
    std::uint64_t seed = 0;
    double d = 1.0;        // generator edge threshold
    double l_factor = 0.55;  // square side = l_factor * sqrt(n)
    std::vector<DatasetEntry> entries;
};

std::string dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(const std::string& text);

std::string report_to_json(const FeasibilityReport& rep, const Graph& g);

std::string trial_to_json(const TrialConfig& cfg, const TrialResult& res);

std::string sweep_to_json(const SweepSummary& s, int graph_id);

// Deterministic per-n aggregate: success percentages, first-feasible-epoch
// stats, best gaps. Wall-time statistics go to timing_csv so this file is
// byte-identical across replays with the same master seed.
std::string aggregate_csv(const std::vector<std::pair<int, SweepSummary>>& sweeps);
std::string timing_csv(const std::vector<std::pair<int, SweepSummary>>& sweeps);

struct RunManifest {
    std::string command;
    std::string config_json;  // serialized JSON object echoing the command configuration
    std::string dataset_path;
    std::vector<std::string> outputs;
    std::uint64_t master_seed = 0;
};

std::string manifest_to_json(const RunManifest& m);

// Whole-file helpers; writes go through a temp file + rename so a failed
// write leaves no partial output.
void save_text(const std::string& path, const std::string& text);
std::string load_text(const std::string& path);

}  // namespace cudg
