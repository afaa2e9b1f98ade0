#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace lpplab {

struct ExperimentSpec {
    std::string id;
    double lambda = 0.0;
    double rho = 0.0;
    double horizon = 0.0;
    std::size_t replicas = 1;
    std::uint64_t seed = 0;
    std::string out_dir;  // empty: nothing is written
    unsigned threads = 0;  // 0: hardware concurrency

    friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

/// Observables of one replica. Excluded replicas carry the reason and no data.
struct ReplicaResult {
    std::size_t replica = 0;
    std::uint64_t seed = 0;
    bool excluded = false;
    std::string reason;
    std::map<std::string, double> scalars;
    std::map<std::string, std::vector<double>> series;

    friend bool operator==(const ReplicaResult&, const ReplicaResult&) = default;
};

/// A statistical verdict: `value` judged against the closed range [lo, hi].
struct Verdict {
    std::string name;
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;
    bool pass = false;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct Summary {
    std::map<std::string, double> estimates;
    std::map<std::string, double> reference;
    std::vector<Verdict> verdicts;
    std::size_t used = 0;
    std::size_t excluded = 0;
    double excluded_fraction = 0.0;
    bool valid = true;  // exclusions within policy
    bool pass = true;   // valid and every verdict passes

    friend bool operator==(const Summary&, const Summary&) = default;
};

struct ExperimentRecord {
    ExperimentSpec spec;
    std::vector<ReplicaResult> replicas;
    Summary summary;
    nlohmann::json metadata;  // isa, wall time, threads; not part of equality
};

/// Replicas whose exclusion fraction exceeds this invalidate the verdicts.
inline constexpr double kMaxExcludedFraction = 0.10;

/// Throws InvalidArgument for unknown ids or bad parameters.
void validate_spec(const ExperimentSpec& spec);

/// One replica, seeded with replica_seed(spec.seed, i).
ReplicaResult run_replica(const ExperimentSpec& spec, std::size_t i);

/// Verdicts from persisted observables only.
Summary evaluate(const ExperimentSpec& spec, const std::vector<ReplicaResult>& replicas);

/// Runs every replica on a worker pool, persists the replicas (when
/// spec.out_dir is set) and only then evaluates.
ExperimentRecord run_ensemble(const ExperimentSpec& spec);

/// Writes <out_dir>/<id>/replicas.jsonl and <out_dir>/<id>/summary.json.
void persist(const ExperimentRecord& record, const std::string& out_dir);
/// Reads a directory written by persist. Throws SchemaError naming the file
/// and line on malformed input.
ExperimentRecord load(const std::string& dir);

void to_json(nlohmann::json& j, const ExperimentSpec& s);
void from_json(const nlohmann::json& j, ExperimentSpec& s);
void to_json(nlohmann::json& j, const ReplicaResult& r);
void from_json(const nlohmann::json& j, ReplicaResult& r);
void to_json(nlohmann::json& j, const Verdict& v);
void from_json(const nlohmann::json& j, Verdict& v);
void to_json(nlohmann::json& j, const Summary& s);
void from_json(const nlohmann::json& j, Summary& s);

}  // namespace lpplab
