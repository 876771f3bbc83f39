#include "cudg/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "cudg/den.hpp"
#include "cudg/elf.hpp"
#include "cudg/neural.hpp"

namespace cudg {

void TrialConfig::validate() const {
    if (lr < 0) throw std::invalid_argument("TrialConfig: lr must be >= 0");
    if (p_drop < 0 || p_drop >= 1) throw std::invalid_argument("TrialConfig: p_drop must be in [0, 1)");
    if (epochs < 0) throw std::invalid_argument("TrialConfig: epochs must be >= 0");
    if (dim != 2 && dim != 3) throw std::invalid_argument("TrialConfig: dim must be 2 or 3");
}

double TrialResult::total_wall_s() const {
    return std::accumulate(epoch_wall_s.begin(), epoch_wall_s.end(), 0.0);
}

double TrialResult::mean_epoch_ms() const {
    if (epoch_wall_s.empty()) return 0.0;
    return total_wall_s() / static_cast<double>(epoch_wall_s.size()) * 1000.0;
}

TrialResult run_learning_phase(const Graph& g, const DomainParams& params, const TrialConfig& cfg,
                               const std::vector<double>* generator_coords) {
    cfg.validate();
    params.validate();

    Embedding start;
    if (cfg.init == InitMethod::scaling) {
        if (!generator_coords)
            throw std::invalid_argument("scaling initializer requires the instance's generator coordinates");
        Embedding raw;
        raw.n = g.n();
        raw.dim = 2;
        raw.coords = *generator_coords;
        if (raw.coords.size() != static_cast<std::size_t>(g.n()) * 2)
            throw std::invalid_argument("generator coordinates must be n x 2");
        start = scale_to_disk(raw, params.L, cfg.dim);
    } else {
        FrConfig fcfg;
        fcfg.dim = cfg.dim;
        fcfg.seed = mix_seed(cfg.seed, 1);
        start = fruchterman_reingold(g, fcfg, params.L);
    }
    const std::vector<double> I = flatten_coords(start);

    DenModel model = build_den(g.n(), cfg.dim, params.L, cfg.p_drop);
    init_weights(model.autoencoder, mix_seed(cfg.seed, 2));
    std::mt19937_64 dropout_rng(mix_seed(cfg.seed, 3));

    AdamWConfig opt_cfg;
    opt_cfg.lr = cfg.lr;
    AdamWState opt = make_adamw(model.autoencoder, opt_cfg);

    ElfState targets = build_targets(g, params, params.epsilon);

    TrialResult res;
    res.alpha_trace.reserve(cfg.epochs);
    res.elf_trace.reserve(cfg.epochs);
    res.gap_trace.reserve(cfg.epochs);
    res.feasible_trace.reserve(cfg.epochs);
    res.epoch_wall_s.reserve(cfg.epochs);

    using clock = std::chrono::steady_clock;
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        auto t0 = clock::now();

        DenForward train = den_forward(model, I, true, dropout_rng);
        auto [loss, dv] = elf(train.v, targets);
        StackGrads grads = den_backward(model, train, dv);
        adamw_step(opt, model.autoencoder, grads);

        DenForward inf = den_forward(model, I, false, dropout_rng);
        Embedding emb = unflatten_coords(inf.coords_flat, g.n(), cfg.dim);
        FeasibilityReport rep = check_embedding(g, emb, params);

        if (rep.feasible && (!res.success || rep.gap > res.best_gap)) {
            if (!res.success) {
                res.success = true;
                res.first_feasible_epoch = epoch;
            }
            res.best_embedding = std::move(emb);
            res.best_gap = rep.gap;
            update_alpha(targets, rep, g, params);
        }

        res.epoch_wall_s.push_back(std::chrono::duration<double>(clock::now() - t0).count());
        res.elf_trace.push_back(loss);
        res.gap_trace.push_back(rep.gap);
        res.feasible_trace.push_back(rep.feasible ? 1 : 0);
        res.alpha_trace.push_back(targets.alpha);
    }

    if (res.success) {
        FeasibilityReport verify = check_embedding(g, res.best_embedding, params);
        if (!verify.feasible || std::abs(verify.gap - res.best_gap) > 1e-12)
            throw std::logic_error("stored best embedding failed re-verification");
    }
    return res;
}

std::vector<TrialConfig> expand_grid(const SweepGrid& grid, std::uint64_t master_seed) {
    std::vector<TrialConfig> configs;
    configs.reserve(grid.inits.size() * grid.lrs.size() * grid.p_drops.size());
    for (InitMethod init : grid.inits)
        for (double lr : grid.lrs)
            for (double p_drop : grid.p_drops) {
                TrialConfig cfg;
                cfg.lr = lr;
                cfg.p_drop = p_drop;
                cfg.init = init;
                cfg.epochs = grid.epochs;
                cfg.dim = grid.dim;
                cfg.seed = mix_seed(master_seed, configs.size());
                cfg.validate();
                configs.push_back(cfg);
            }
    return configs;
}

SweepSummary run_sweep(const Graph& g, const std::vector<double>* generator_coords,
                       const DomainParams& params, const SweepGrid& grid, std::uint64_t master_seed,
                       int workers) {
    std::vector<TrialConfig> configs = expand_grid(grid, master_seed);

    SweepSummary summary;
    summary.n = g.n();
    summary.dim = grid.dim;
    summary.trials.resize(configs.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
        for (std::size_t t; (t = next.fetch_add(1)) < configs.size();) {
            try {
                summary.trials[t].trial_index = static_cast<int>(t);
                summary.trials[t].config = configs[t];
                summary.trials[t].result = run_learning_phase(g, params, configs[t], generator_coords);
            } catch (...) {
                std::lock_guard<std::mutex> lk(failure_mu);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    int n_workers = std::max(1, std::min<int>(workers, static_cast<int>(configs.size())));
    if (n_workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    double total_trial_s = 0.0;
    double total_epoch_s = 0.0;
    std::size_t total_epochs = 0;
    for (const TrialRecord& rec : summary.trials) {
        total_trial_s += rec.result.total_wall_s();
        total_epoch_s += rec.result.total_wall_s();
        total_epochs += rec.result.epoch_wall_s.size();
        if (rec.result.success &&
            (!summary.success || rec.result.best_gap > summary.best_gap)) {
            summary.success = true;
            summary.best_trial = rec.trial_index;
            summary.best_gap = rec.result.best_gap;
        }
    }
    if (!summary.trials.empty()) summary.mean_trial_s = total_trial_s / summary.trials.size();
    if (total_epochs > 0) summary.mean_epoch_ms = total_epoch_s / total_epochs * 1000.0;
    return summary;
}

}  // namespace cudg
