// lpplab command-line front end. Exit codes: 0 success, 1 a verdict failed,
// 2 usage or parameter error, 3 runtime failure.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpplab/error.hpp"
#include "lpplab/experiments.hpp"
#include "lpplab/export.hpp"
#include "lpplab/hammersley.hpp"
#include "lpplab/harness.hpp"
#include "lpplab/hydro.hpp"
#include "lpplab/lpp.hpp"
#include "lpplab/png.hpp"
#include "lpplab/pointfield.hpp"
#include "lpplab/simd/kernels.hpp"

namespace fs = std::filesystem;
using namespace lpplab;

namespace {

constexpr int kOk = 0, kVerdictFail = 1, kUsage = 2, kRuntime = 3;

struct Params {
    std::optional<double> lambda, rho, horizon;
    std::optional<std::size_t> replicas;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::string out;
    std::string config;
    std::string format = "csv";
    int verbose = 0;
};

void add_model_flags(CLI::App* app, Params& p) {
    app->add_option("--lambda", p.lambda, "source intensity λ >= 0");
    app->add_option("--rho", p.rho, "sink intensity ρ >= 0");
    app->add_option("--horizon", p.horizon, "time horizon / window size");
    app->add_option("--seed", p.seed, "base seed");
    app->add_option("--out", p.out, "output directory (default: $LPPLAB_OUT)");
    app->add_option("--format", p.format, "output format")->check(CLI::IsMember({"csv", "json", "svg"}));
    app->add_flag("-v,--verbose", p.verbose, "more diagnostics");
}

std::string out_dir(const Params& p) {
    if (!p.out.empty()) return p.out;
    if (const char* env = std::getenv("LPPLAB_OUT"); env && *env) return env;
    return {};
}

// Writes to <out>/<name> when an output directory is known, stdout otherwise.
template <class F>
void emit(const Params& p, const std::string& name, F&& write) {
    auto dir = out_dir(p);
    if (dir.empty()) {
        write(std::cout);
        return;
    }
    fs::create_directories(dir);
    std::ofstream f(fs::path(dir) / name);
    if (!f) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
    write(f);
    if (p.verbose) std::cerr << "wrote " << (fs::path(dir) / name).string() << '\n';
}

PointConfig config_for(const Params& p, const std::string& input, double window_scale = 1.0) {
    if (!input.empty()) return load_config(input);
    double h = p.horizon.value_or(50.0);
    require(h > 0.0, "horizon must be > 0");
    return sample_config(p.lambda.value_or(0.0), p.rho.value_or(0.0), {h * window_scale, h * window_scale},
                         p.seed.value_or(0));
}

int run_sample(const Params& p) {
    auto cfg = config_for(p, "");
    emit(p, p.format == "csv" ? "config.csv" : "config.json", [&](std::ostream& o) {
        if (p.format == "csv") {
            o << "x,t,kind\n";
            o.precision(17);
            for (const auto& c : points_by_t(cfg))
                o << c.p.x << ',' << c.p.t << ','
                  << (c.kind == PointKind::bulk ? "bulk" : c.kind == PointKind::source ? "source" : "sink") << '\n';
        } else {
            o << nlohmann::json(cfg).dump() << '\n';
        }
    });
    return kOk;
}

int run_simulate(const Params& p, const std::string& model, const std::string& input) {
    if (model == "lpp") {
        auto d = level_decomposition(config_for(p, input));
        if (p.format == "json") {
            emit(p, "lpp.json", [&](std::ostream& o) {
                o << nlohmann::json{{"levels", d.num_levels()}, {"points", d.points.size()}}.dump() << '\n';
            });
        } else {
            emit(p, "levels.csv", [&](std::ostream& o) { write_levels_csv(o, d); });
        }
    } else if (model == "hammersley") {
        auto cfg = config_for(p, input);
        auto run = evolve(cfg);
        if (p.format == "json") {
            nlohmann::json j{{"particles", run.trajectories.size()}};
            try {
                auto scp = second_class(cfg);
                nlohmann::json pts = nlohmann::json::array();
                for (const auto& q : scp.points) pts.push_back({q.x, q.t});
                j["second_class"] = {{"points", pts}, {"truncated", scp.truncated}};
            } catch (const NoSinkExit&) {
                j["second_class"] = nullptr;
            }
            emit(p, "hammersley.json", [&](std::ostream& o) { o << j.dump() << '\n'; });
        } else if (p.format == "svg") {
            emit(p, "trajectories.svg", [&](std::ostream& o) { write_trajectories_svg(o, run); });
        } else {
            emit(p, "trajectories.csv", [&](std::ostream& o) { write_trajectories_csv(o, run); });
        }
    } else {
        double h = p.horizon.value_or(50.0);
        auto cfg = input.empty() ? config_for(p, "", std::sqrt(2.0)) : load_config(input);
        auto run = evolve_two_type(nucleations_from(cfg), h, cfg.seed);
        if (p.format == "json") {
            nlohmann::json pts = nlohmann::json::array();
            for (const auto& q : run.trace.points) pts.push_back({q.z, q.s});
            emit(p, "png.json", [&](std::ostream& o) {
                o << nlohmann::json{{"interface", pts},
                                    {"violations", run.trace.monotonicity_violations},
                                    {"detached_layers", run.trace.detached_layers}}
                         .dump()
                  << '\n';
            });
        } else {
            emit(p, "heights.csv", [&](std::ostream& o) { write_heights_csv(o, run.profile, 101, 51); });
        }
    }
    return kOk;
}

int run_experiment(const Params& p, const std::string& id) {
    const auto& def = find_experiment(id);
    // Registry defaults, then the config file, then explicit flags.
    ExperimentSpec spec;
    spec.lambda = def.defaults.lambda;
    spec.rho = def.defaults.rho;
    spec.horizon = def.defaults.horizon;
    spec.replicas = def.defaults.replicas;
    if (!p.config.empty()) {
        std::ifstream in(p.config);
        if (!in) throw InvalidArgument("cannot read config " + p.config);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError(p.config + ": " + e.what());
        }
        try {
            from_json(j, spec);
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError(p.config + ": " + e.what());
        }
    }
    spec.id = id;
    if (p.lambda) spec.lambda = *p.lambda;
    if (p.rho) spec.rho = *p.rho;
    if (p.horizon) spec.horizon = *p.horizon;
    if (p.replicas) spec.replicas = *p.replicas;
    if (p.seed) spec.seed = *p.seed;
    if (p.threads) spec.threads = *p.threads;
    if (auto dir = out_dir(p); !dir.empty()) spec.out_dir = dir;
    if (spec.out_dir.empty()) spec.out_dir = "lpplab-out";

    if (p.verbose) std::cerr << "running " << nlohmann::json(spec).dump() << '\n';
    auto rec = run_ensemble(spec);

    if (p.format == "svg" && id == "cdf_scp") {
        std::vector<double> v;
        for (const auto& r : rec.replicas)
            if (!r.excluded) v.push_back(r.scalars.at("x_over_t"));
        ModelParams mp{spec.lambda, spec.rho};
        auto [lo, hi] = fan_speeds(mp);
        std::ofstream f(fs::path(spec.out_dir) / id / "cdf.svg");
        write_cdf_svg(f, v, [&](double r) { return z_cdf(r, mp); }, std::max(0.0, lo - 0.5),
                      std::isfinite(hi) ? hi + 0.5 : lo + 16.0, "X_t/t against the limit CDF");
    }

    const auto& s = rec.summary;
    std::cout << id << ": used " << s.used << ", excluded " << s.excluded << (s.valid ? "" : " (INVALID)")
              << '\n';
    for (const auto& [k, v] : s.estimates) std::cout << "  " << k << " = " << v << '\n';
    for (const auto& v : s.verdicts)
        std::cout << "  " << (v.pass ? "PASS " : "FAIL ") << v.name << " = " << v.value << " in [" << v.lo
                  << ", " << v.hi << "] (n = " << v.n << ")\n";
    std::cout << "record: " << (fs::path(spec.out_dir) / id).string() << '\n';
    return s.pass ? kOk : kVerdictFail;
}

int run_tabulate(const Params& p, const std::string& what, int rows) {
    ModelParams mp{p.lambda.value_or(0.5), p.rho.value_or(1.0)};
    emit(p, what + ".csv", [&](std::ostream& o) {
        if (what == "cdf") tabulate_cdf(o, mp, rows);
        else if (what == "shape") tabulate_shape(o, p.horizon.value_or(1.0), rows);
        else tabulate_burgers(o, mp, rows);
    });
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Last-passage percolation, Hammersley and PNG laboratory", "lpplab"};
    app.require_subcommand(1);
    Params p;
    std::string model, id, table, input;
    int rows = 101;

    auto* sample = app.add_subcommand("sample", "emit a sampled point configuration");
    add_model_flags(sample, p);

    auto* simulate = app.add_subcommand("simulate", "single run with exports");
    simulate->add_option("model", model, "lpp | hammersley | png")
        ->required()
        ->check(CLI::IsMember({"lpp", "hammersley", "png"}));
    simulate->add_option("--input", input, "configuration JSON written by `sample`");
    add_model_flags(simulate, p);

    auto* experiment = app.add_subcommand("experiment", "replicated experiment with verdicts");
    experiment->add_option("id", id, "experiment id")->required();
    experiment->add_option("--replicas", p.replicas, "number of replicas");
    experiment->add_option("--config", p.config, "JSON experiment spec; flags override it");
    experiment->add_option("--threads", p.threads, "worker threads (0: all cores)");
    add_model_flags(experiment, p);

    auto* tabulate = app.add_subcommand("tabulate", "closed-form tables");
    tabulate->add_option("table", table, "cdf | shape | burgers")
        ->required()
        ->check(CLI::IsMember({"cdf", "shape", "burgers"}));
    tabulate->add_option("--rows", rows, "number of rows")->check(CLI::Range(2, 1000000));
    add_model_flags(tabulate, p);

    if (argc <= 1) {
        std::cerr << app.help();
        return kUsage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cerr, std::cerr);
        std::cerr << app.help();
        return kUsage;
    }

    try {
        if (p.verbose) std::cerr << "kernels: " << simd::to_string(simd::active().isa) << '\n';
        if (*sample) return run_sample(p);
        if (*simulate) return run_simulate(p, model, input);
        if (*experiment) return run_experiment(p, id);
        return run_tabulate(p, table, rows);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
}
