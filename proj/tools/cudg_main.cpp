#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cudg/den.hpp"
#include "cudg/feasibility.hpp"
#include "cudg/graph.hpp"
#include "cudg/initializers.hpp"
#include "cudg/io.hpp"
#include "cudg/svg.hpp"
#include "cudg/trainer.hpp"

namespace {

using nlohmann::json;

// Exit codes: 0 success/feasible, 1 internal error, 2 usage/parse error,
// 3 clean run without a feasible result.
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

struct DomainFlags {
    double dmin = 4.0;
    double dadj = 10.26;
    double L = 50.0;
    double eps = 0.1;
    double iota = 1.0;

    cudg::DomainParams params() const {
        cudg::DomainParams p;
        p.d_min = dmin;
        p.d_adj = dadj;
        p.L = L;
        p.epsilon = eps;
        p.iota = iota;
        p.validate();
        return p;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--dmin", dmin, "minimum pair separation (um)")->capture_default_str();
        cmd->add_option("--dadj", dadj, "unit disk radius (um)")->capture_default_str();
        cmd->add_option("--L", L, "register radius (um)")->capture_default_str();
        cmd->add_option("--eps", eps, "non-adjacent slack (um)")->capture_default_str();
        cmd->add_option("--iota", iota, "penalty margin")->capture_default_str();
    }
};

json domain_echo(const DomainFlags& d) {
    return json{{"dmin", d.dmin}, {"dadj", d.dadj}, {"L", d.L}, {"eps", d.eps}, {"iota", d.iota}};
}

const cudg::DatasetEntry& find_entry(const cudg::Dataset& ds, int id) {
    for (const auto& e : ds.entries)
        if (e.id == id) return e;
    throw std::invalid_argument("graph id " + std::to_string(id) + " not present in dataset");
}

int resolve_workers(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("CUDG_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

struct GenOpts {
    std::vector<int> n_list;
    int count = 20;
    std::uint64_t seed = 0;
    double d = 1.0;
    double l_factor = 0.55;
    int max_retries = 200;
    std::string out;
};

int cmd_gen(const GenOpts& o) {
    cudg::Dataset ds;
    ds.n_list = o.n_list;
    ds.per_n = o.count;
    ds.seed = o.seed;
    ds.d = o.d;
    ds.l_factor = o.l_factor;

    int id = 0;
    for (int n : o.n_list) {
        for (int c = 0; c < o.count; ++c, ++id) {
            cudg::GeneratorConfig cfg;
            cfg.n = n;
            cfg.l = o.l_factor * std::sqrt(static_cast<double>(n));
            cfg.d = o.d;
            cfg.seed = cudg::mix_seed(o.seed, static_cast<std::uint64_t>(id));
            cfg.max_retries = o.max_retries;
            cudg::GeneratedInstance inst = cudg::generate_instance(cfg);
            ds.entries.push_back({id, std::move(inst.graph), std::move(inst.coords)});
        }
    }
    cudg::save_text(o.out, cudg::dataset_to_json(ds));

    cudg::RunManifest man;
    man.command = "gen";
    man.config_json = json{{"n_list", o.n_list}, {"count", o.count}, {"seed", o.seed},
                           {"d", o.d},           {"l_factor", o.l_factor}, {"max_retries", o.max_retries}}
                          .dump();
    man.outputs = {o.out};
    man.master_seed = o.seed;
    cudg::save_text(o.out + ".manifest.json", cudg::manifest_to_json(man));
    std::printf("wrote %d graphs to %s\n", id, o.out.c_str());
    return kExitOk;
}

struct EmbedOpts {
    std::string dataset;
    int id = 0;
    int dim = 2;
    std::string init = "fr";
    double lr = 0.001;
    double p_drop = 0.5;
    int epochs = 3000;
    std::uint64_t seed = 0;
    std::string out;
    std::string svg;
    DomainFlags domain;
};

int cmd_embed(const EmbedOpts& o) {
    cudg::DomainParams params = o.domain.params();
    cudg::Dataset ds = cudg::dataset_from_json(cudg::load_text(o.dataset));
    const cudg::DatasetEntry& entry = find_entry(ds, o.id);

    cudg::TrialConfig cfg;
    cfg.lr = o.lr;
    cfg.p_drop = o.p_drop;
    cfg.init = cudg::init_method_from_string(o.init);
    cfg.epochs = o.epochs;
    cfg.dim = o.dim;
    cfg.seed = o.seed;
    cfg.validate();

    cudg::TrialResult res = cudg::run_learning_phase(entry.graph, params, cfg, &entry.coords);
    cudg::save_text(o.out, cudg::trial_to_json(cfg, res));

    cudg::RunManifest man;
    man.command = "embed";
    man.config_json = json{{"graph_id", o.id}, {"dim", o.dim},       {"init", o.init},
                           {"lr", o.lr},       {"p_drop", o.p_drop}, {"epochs", o.epochs},
                           {"seed", o.seed},   {"domain", domain_echo(o.domain)}}
                          .dump();
    man.dataset_path = o.dataset;
    man.outputs = {o.out};
    man.master_seed = o.seed;

    if (res.success && !o.svg.empty()) {
        cudg::save_text(o.svg, cudg::render_register_svg(entry.graph, res.best_embedding, params));
        man.outputs.push_back(o.svg);
    } else if (!res.success && !o.svg.empty()) {
        std::fprintf(stderr, "no feasible embedding found, skipping SVG\n");
    }
    cudg::save_text(o.out + ".manifest.json", cudg::manifest_to_json(man));

    if (res.success) {
        std::printf("feasible at epoch %d, gap %.4f um\n", res.first_feasible_epoch, res.best_gap);
        return kExitOk;
    }
    std::printf("no feasible embedding within %d epochs\n", o.epochs);
    return kExitInfeasible;
}

struct SweepOpts {
    std::string dataset;
    int dim = 2;
    int workers = 0;
    std::uint64_t seed = 0;
    int epochs = 3000;
    std::string out_dir;
    DomainFlags domain;
};

int cmd_sweep(const SweepOpts& o) {
    cudg::DomainParams params = o.domain.params();
    cudg::Dataset ds = cudg::dataset_from_json(cudg::load_text(o.dataset));
    int workers = resolve_workers(o.workers);

    cudg::SweepGrid grid;
    grid.epochs = o.epochs;
    grid.dim = o.dim;

    std::vector<std::pair<int, cudg::SweepSummary>> done;
    std::vector<std::string> outputs;
    int errors = 0;
    for (const cudg::DatasetEntry& entry : ds.entries) {
        std::string path = o.out_dir + "/sweep_graph_" + std::to_string(entry.id) + ".json";
        try {
            cudg::SweepSummary s = cudg::run_sweep(entry.graph, &entry.coords, params, grid,
                                                   cudg::mix_seed(o.seed, entry.id), workers);
            cudg::save_text(path, cudg::sweep_to_json(s, entry.id));
            done.emplace_back(entry.id, std::move(s));
        } catch (const std::exception& e) {
            ++errors;
            cudg::save_text(path, json{{"graph_id", entry.id}, {"error", e.what()}}.dump(2) + "\n");
            std::fprintf(stderr, "graph %d failed: %s\n", entry.id, e.what());
        }
        outputs.push_back(path);
    }

    std::string agg_path = o.out_dir + "/aggregate.csv";
    std::string timing_path = o.out_dir + "/timing.csv";
    cudg::save_text(agg_path, cudg::aggregate_csv(done));
    cudg::save_text(timing_path, cudg::timing_csv(done));
    outputs.push_back(agg_path);
    outputs.push_back(timing_path);

    cudg::RunManifest man;
    man.command = "sweep";
    man.config_json = json{{"dim", o.dim},     {"workers", workers},        {"seed", o.seed},
                           {"epochs", o.epochs}, {"domain", domain_echo(o.domain)}}
                          .dump();
    man.dataset_path = o.dataset;
    man.outputs = outputs;
    man.master_seed = o.seed;
    cudg::save_text(o.out_dir + "/manifest.json", cudg::manifest_to_json(man));

    int feasible = 0;
    for (const auto& [id, s] : done) feasible += s.success ? 1 : 0;
    std::printf("%d/%zu graphs feasible (%d errors)\n", feasible, ds.entries.size(), errors);
    if (errors > 0) return kExitInternal;
    return feasible > 0 || ds.entries.empty() ? kExitOk : kExitInfeasible;
}

struct CheckOpts {
    std::string dataset;
    int id = 0;
    std::string coords_path;
    std::string out;
    DomainFlags domain;
};

cudg::Embedding parse_coords(const std::string& text) {
    json j = json::parse(text);
    if (j.is_object()) {
        if (!j.contains("best_coords") || j["best_coords"].is_null())
            throw std::invalid_argument("coordinates file has no best_coords");
        j = j["best_coords"];
    }
    if (!j.is_array() || j.empty()) throw std::invalid_argument("coordinates must be a non-empty array of points");
    cudg::Embedding emb(static_cast<int>(j.size()), static_cast<int>(j.at(0).size()));
    for (int v = 0; v < emb.n; ++v) {
        const json& pt = j.at(v);
        if (static_cast<int>(pt.size()) != emb.dim)
            throw std::invalid_argument("inconsistent point dimensionality in coordinates file");
        for (int a = 0; a < emb.dim; ++a) emb.at(v, a) = pt.at(a).get<double>();
    }
    return emb;
}

int cmd_check(const CheckOpts& o) {
    cudg::DomainParams params = o.domain.params();
    cudg::Dataset ds = cudg::dataset_from_json(cudg::load_text(o.dataset));
    const cudg::DatasetEntry& entry = find_entry(ds, o.id);
    cudg::Embedding emb = parse_coords(cudg::load_text(o.coords_path));

    cudg::FeasibilityReport rep = cudg::check_embedding(entry.graph, emb, params);
    std::string text = cudg::report_to_json(rep, entry.graph);
    std::fputs(text.c_str(), stdout);
    if (!o.out.empty()) {
        cudg::save_text(o.out, text);
        cudg::RunManifest man;
        man.command = "check";
        man.config_json = json{{"graph_id", o.id}, {"coords", o.coords_path},
                               {"domain", domain_echo(o.domain)}}
                              .dump();
        man.dataset_path = o.dataset;
        man.outputs = {o.out};
        cudg::save_text(o.out + ".manifest.json", cudg::manifest_to_json(man));
    }
    return rep.feasible ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unit-disk register embedding toolkit"};
    app.set_version_flag("--version", cudg::kToolVersion);
    app.require_subcommand(1);

    GenOpts gen;
    CLI::App* c_gen = app.add_subcommand("gen", "generate a gate-checked random graph dataset");
    c_gen->add_option("--n", gen.n_list, "vertex counts, e.g. --n 10 20 30")->required();
    c_gen->add_option("--count", gen.count, "graphs per vertex count")->capture_default_str();
    c_gen->add_option("--seed", gen.seed, "master seed")->capture_default_str();
    c_gen->add_option("--d", gen.d, "edge threshold, generator units")->capture_default_str();
    c_gen->add_option("--l-factor", gen.l_factor, "square side = l-factor * sqrt(n)")->capture_default_str();
    c_gen->add_option("--max-retries", gen.max_retries, "resample budget per graph")->capture_default_str();
    c_gen->add_option("--out", gen.out, "dataset JSON path")->required();

    EmbedOpts embed;
    CLI::App* c_embed = app.add_subcommand("embed", "run one learning phase on one graph");
    c_embed->add_option("--dataset", embed.dataset, "dataset JSON path")->required();
    c_embed->add_option("--id", embed.id, "graph id inside the dataset")->required();
    c_embed->add_option("--dim", embed.dim, "embedding dimensionality")->check(CLI::IsMember({2, 3}))->capture_default_str();
    c_embed->add_option("--init", embed.init, "initializer")->check(CLI::IsMember({"scaling", "fr"}))->capture_default_str();
    c_embed->add_option("--lr", embed.lr, "learning rate")->capture_default_str();
    c_embed->add_option("--pdrop", embed.p_drop, "dropout probability")->capture_default_str();
    c_embed->add_option("--epochs", embed.epochs, "epoch budget")->capture_default_str();
    c_embed->add_option("--seed", embed.seed, "trial seed")->capture_default_str();
    c_embed->add_option("--out", embed.out, "result JSON path")->required();
    c_embed->add_option("--svg", embed.svg, "render the best embedding to this SVG path");
    embed.domain.attach(c_embed);

    SweepOpts sweep;
    CLI::App* c_sweep = app.add_subcommand("sweep", "run the 18-trial grid on every dataset graph");
    c_sweep->add_option("--dataset", sweep.dataset, "dataset JSON path")->required();
    c_sweep->add_option("--dim", sweep.dim, "embedding dimensionality")->check(CLI::IsMember({2, 3}))->capture_default_str();
    c_sweep->add_option("--workers", sweep.workers, "worker threads (default 1, or CUDG_WORKERS)");
    c_sweep->add_option("--seed", sweep.seed, "master seed")->capture_default_str();
    c_sweep->add_option("--epochs", sweep.epochs, "epoch budget per trial")->capture_default_str();
    c_sweep->add_option("--out-dir", sweep.out_dir, "output directory (must exist)")->required();
    sweep.domain.attach(c_sweep);

    CheckOpts check;
    CLI::App* c_check = app.add_subcommand("check", "verify a coordinates file against a graph");
    c_check->add_option("--dataset", check.dataset, "dataset JSON path")->required();
    c_check->add_option("--id", check.id, "graph id inside the dataset")->required();
    c_check->add_option("--coords", check.coords_path, "coordinates JSON ([[x,y],...] or embed output)")->required();
    c_check->add_option("--out", check.out, "also write the report JSON here");
    check.domain.attach(c_check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(c_gen)) return cmd_gen(gen);
        if (app.got_subcommand(c_embed)) return cmd_embed(embed);
        if (app.got_subcommand(c_sweep)) return cmd_sweep(sweep);
        if (app.got_subcommand(c_check)) return cmd_check(check);
        std::fprintf(stderr, "no command selected\n");
        return kExitUsage;
    } catch (const cudg::GenerationError& e) {
        std::fprintf(stderr, "generation failed: %s\n", e.what());
        return kExitInfeasible;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return kExitInternal;
    }
}
