#include "lpplab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "lpplab/error.hpp"
#include "lpplab/experiments.hpp"
#include "lpplab/rng.hpp"
#include "lpplab/simd/kernels.hpp"

namespace lpplab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// JSON has no NaN or infinity: they travel as null and come back as NaN.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double num_from(const json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

json num_map(const std::map<std::string, double>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[k] = num(v);
    return j;
}

std::map<std::string, double> num_map_from(const json& j) {
    std::map<std::string, double> m;
    for (const auto& [k, v] : j.items()) m[k] = num_from(v);
    return m;
}

}  // namespace

void to_json(json& j, const ExperimentSpec& s) {
    j = json{{"id", s.id},           {"lambda", s.lambda}, {"rho", s.rho},
             {"horizon", s.horizon}, {"replicas", s.replicas}, {"seed", s.seed},
             {"out_dir", s.out_dir}, {"threads", s.threads}};
}

// Every field is optional so a partial spec can serve as a config file.
void from_json(const json& j, ExperimentSpec& s) {
    if (!j.is_object()) throw SchemaError("spec must be a JSON object");
    for (const auto& [k, v] : j.items()) {
        if (k == "id") s.id = v.get<std::string>();
        else if (k == "lambda") s.lambda = v.get<double>();
        else if (k == "rho") s.rho = v.get<double>();
        else if (k == "horizon") s.horizon = v.get<double>();
        else if (k == "replicas") s.replicas = v.get<std::size_t>();
        else if (k == "seed") s.seed = v.get<std::uint64_t>();
        else if (k == "out_dir") s.out_dir = v.get<std::string>();
        else if (k == "threads") s.threads = v.get<unsigned>();
        else throw SchemaError("spec: unknown field '" + k + "'");
    }
}

void to_json(json& j, const ReplicaResult& r) {
    json series = json::object();
    for (const auto& [k, v] : r.series) {
        json a = json::array();
        for (double x : v) a.push_back(num(x));
        series[k] = std::move(a);
    }
    j = json{{"replica", r.replica},   {"seed", r.seed},
             {"excluded", r.excluded}, {"reason", r.reason},
             {"scalars", num_map(r.scalars)}, {"series", std::move(series)}};
}

void from_json(const json& j, ReplicaResult& r) {
    r.replica = j.at("replica").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.excluded = j.at("excluded").get<bool>();
    r.reason = j.at("reason").get<std::string>();
    r.scalars = num_map_from(j.at("scalars"));
    r.series.clear();
    for (const auto& [k, v] : j.at("series").items()) {
        auto& out = r.series[k];
        for (const auto& x : v) out.push_back(num_from(x));
    }
}

void to_json(json& j, const Verdict& v) {
    j = json{{"name", v.name}, {"value", num(v.value)}, {"lo", num(v.lo)},
             {"hi", num(v.hi)}, {"n", v.n},              {"pass", v.pass}};
}

void from_json(const json& j, Verdict& v) {
    v.name = j.at("name").get<std::string>();
    v.value = num_from(j.at("value"));
    v.lo = num_from(j.at("lo"));
    v.hi = num_from(j.at("hi"));
    v.n = j.at("n").get<std::size_t>();
    v.pass = j.at("pass").get<bool>();
}

void to_json(json& j, const Summary& s) {
    j = json{{"estimates", num_map(s.estimates)},
             {"reference", num_map(s.reference)},
             {"verdicts", s.verdicts},
             {"used", s.used},
             {"excluded", s.excluded},
             {"excluded_fraction", num(s.excluded_fraction)},
             {"valid", s.valid},
             {"pass", s.pass}};
}

void from_json(const json& j, Summary& s) {
    s.estimates = num_map_from(j.at("estimates"));
    s.reference = num_map_from(j.at("reference"));
    s.verdicts = j.at("verdicts").get<std::vector<Verdict>>();
    s.used = j.at("used").get<std::size_t>();
    s.excluded = j.at("excluded").get<std::size_t>();
    s.excluded_fraction = num_from(j.at("excluded_fraction"));
    s.valid = j.at("valid").get<bool>();
    s.pass = j.at("pass").get<bool>();
}

void validate_spec(const ExperimentSpec& spec) {
    const auto& def = find_experiment(spec.id);
    require(std::isfinite(spec.lambda) && spec.lambda >= 0.0, "lambda must be >= 0");
    require(std::isfinite(spec.rho) && spec.rho >= 0.0, "rho must be >= 0");
    require(spec.replicas >= 1, "replicas must be >= 1");
    def.check(spec);
}

ReplicaResult run_replica(const ExperimentSpec& spec, std::size_t i) {
    const auto& def = find_experiment(spec.id);
    ReplicaResult r;
    r.replica = i;
    r.seed = replica_seed(spec.seed, i);
    try {
        def.replica(spec, r.seed, r);
    } catch (const TruncationError& e) {
        r.excluded = true;
        r.reason = std::string("truncated: ") + e.what();
    } catch (const NoSinkExit& e) {
        r.excluded = true;
        r.reason = std::string("no sink exit: ") + e.what();
    }
    if (r.excluded) {
        r.scalars.clear();
        r.series.clear();
    }
    return r;
}

Summary evaluate(const ExperimentSpec& spec, const std::vector<ReplicaResult>& replicas) {
    const auto& def = find_experiment(spec.id);
    Summary s;
    std::vector<const ReplicaResult*> used;
    for (const auto& r : replicas) {
        if (r.excluded) ++s.excluded;
        else used.push_back(&r);
    }
    s.used = used.size();
    s.excluded_fraction =
        replicas.empty() ? 1.0 : static_cast<double>(s.excluded) / static_cast<double>(replicas.size());
    s.valid = !used.empty() && s.excluded_fraction <= kMaxExcludedFraction;
    if (!used.empty()) {
        try {
            def.evaluate(spec, used, s);
        } catch (const std::out_of_range& e) {
            throw SchemaError(std::string(spec.id) + ": replica data missing an observable (" + e.what() + ")");
        }
    }
    s.pass = s.valid && std::all_of(s.verdicts.begin(), s.verdicts.end(), [](const Verdict& v) { return v.pass; });
    return s;
}

ExperimentRecord run_ensemble(const ExperimentSpec& spec) {
    validate_spec(spec);
    auto start = std::chrono::steady_clock::now();
    unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, spec.replicas));

    ExperimentRecord rec;
    rec.spec = spec;
    rec.replicas.resize(spec.replicas);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= spec.replicas) return;
            try {
                rec.replicas[i] = run_replica(spec, i);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
                next = spec.replicas;
                return;
            }
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.metadata = json{{"isa", std::string(simd::to_string(simd::active().isa))},
                        {"threads", threads},
                        {"wall_seconds", wall}};

    // Raw observables are on disk before any verdict is formed.
    if (!spec.out_dir.empty()) persist(rec, spec.out_dir);
    rec.summary = evaluate(spec, rec.replicas);
    if (!spec.out_dir.empty()) persist(rec, spec.out_dir);
    return rec;
}

void persist(const ExperimentRecord& record, const std::string& out_dir) {
    fs::path dir = fs::path(out_dir) / record.spec.id;
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "replicas.jsonl");
        if (!out) throw std::runtime_error("cannot write " + (dir / "replicas.jsonl").string());
        for (const auto& r : record.replicas) out << json(r).dump() << '\n';
    }
    std::ofstream out(dir / "summary.json");
    if (!out) throw std::runtime_error("cannot write " + (dir / "summary.json").string());
    out << json{{"spec", record.spec}, {"summary", record.summary}, {"metadata", record.metadata}}.dump(2)
        << '\n';
}

ExperimentRecord load(const std::string& dir) {
    ExperimentRecord rec;
    fs::path summary = fs::path(dir) / "summary.json";
    fs::path replicas = fs::path(dir) / "replicas.jsonl";
    {
        std::ifstream in(summary);
        if (!in) throw SchemaError(summary.string() + ": cannot read");
        try {
            json j;
            in >> j;
            rec.spec = j.at("spec").get<ExperimentSpec>();
            rec.summary = j.at("summary").get<Summary>();
            rec.metadata = j.value("metadata", json::object());
        } catch (const json::exception& e) {
            throw SchemaError(summary.string() + ": " + e.what());
        }
    }
    std::ifstream in(replicas);
    if (!in) throw SchemaError(replicas.string() + ": cannot read");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            rec.replicas.push_back(json::parse(line).get<ReplicaResult>());
        } catch (const json::exception& e) {
            throw SchemaError(replicas.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return rec;
}

}  // namespace lpplab
