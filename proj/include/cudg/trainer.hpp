#pragma once

#include <cstdint>
#include <vector>

#include "cudg/feasibility.hpp"
#include "cudg/graph.hpp"
#include "cudg/initializers.hpp"

namespace cudg {

struct TrialConfig {
    double lr = 0.001;
    double p_drop = 0.5;
    InitMethod init = InitMethod::fr;
    int epochs = 3000;
    int dim = 2;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TrialResult {
    bool success = false;
    Embedding best_embedding;   // meaningful only when success
    double best_gap = 0.0;      // um, only when success
    int first_feasible_epoch = 0;  // 1-based; 0 when no epoch was feasible
    std::vector<double> alpha_trace;          // alpha in effect after each epoch
    std::vector<double> elf_trace;            // training-step loss per epoch
    std::vector<double> gap_trace;            // inference-step adjacency gap per epoch
    std::vector<std::uint8_t> feasible_trace; // inference-step feasibility per epoch
    std::vector<double> epoch_wall_s;

    double total_wall_s() const;
    double mean_epoch_ms() const;
};

// One full learning phase: per epoch, a dropout training step (ELF backward +
// AdamW update) followed by a deterministic inference step whose coordinates
// are feasibility-checked. The best embedding is replaced only on strict gap
// improvement; alpha is raised on those improvements. No early stopping.
// generator_coords (n x 2, point-major, generator units) back the scaling
// initializer and may be null when cfg.init is fr.
TrialResult run_learning_phase(const Graph& g, const DomainParams& params, const TrialConfig& cfg,
                               const std::vector<double>* generator_coords = nullptr);

struct SweepGrid {
    std::vector<InitMethod> inits{InitMethod::scaling, InitMethod::fr};
    std::vector<double> lrs{0.01, 0.001, 0.0001};
    std::vector<double> p_drops{0.3, 0.5, 0.7};
    int epochs = 3000;
    int dim = 2;
};

// Cartesian expansion in (init, lr, p_drop) order; trial seeds are derived
// from the master seed and the trial index.
std::vector<TrialConfig> expand_grid(const SweepGrid& grid, std::uint64_t master_seed);

struct TrialRecord {
    int trial_index = 0;
    TrialConfig config;
    TrialResult result;
};

struct SweepSummary {
    int n = 0;
    int dim = 2;
    bool success = false;
    int best_trial = -1;  // index into trials; -1 when no trial was feasible
    double best_gap = 0.0;
    double mean_trial_s = 0.0;
    double mean_epoch_ms = 0.0;
    std::vector<TrialRecord> trials;
};

// Runs every grid trial (18 with the default grid) on one graph. Trials are
// independent and may run on several worker threads; records are collected by
// trial index so results do not depend on scheduling.
SweepSummary run_sweep(const Graph& g, const std::vector<double>* generator_coords,
                       const DomainParams& params, const SweepGrid& grid, std::uint64_t master_seed,
                       int workers = 1);

}  // namespace cudg
