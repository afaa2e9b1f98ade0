#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lpplab/error.hpp"
#include "lpplab/experiments.hpp"
#include "lpplab/harness.hpp"
#include "lpplab/rng.hpp"

#include <cmath>
#include <limits>

using namespace lpplab;
namespace fs = std::filesystem;

namespace {

ExperimentSpec small_spec(std::string id = "shape_check") {
    ExperimentSpec s;
    s.id = std::move(id);
    s.horizon = 20;
    s.replicas = 6;
    s.seed = 5;
    s.threads = 2;
    return s;
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("lpplab_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("registry") {
    CHECK(experiments().size() == 11);
    CHECK(find_experiment("cdf_scp").id == "cdf_scp");
    CHECK_THROWS_AS(find_experiment("nope"), InvalidArgument);
    auto s = small_spec("nope");
    CHECK_THROWS_AS(validate_spec(s), InvalidArgument);
    auto w = small_spec("cdf_scp");
    w.lambda = 1.0;
    w.rho = 1.0;
    CHECK_THROWS_AS(validate_spec(w), InvalidArgument);  // needs λρ < 1
    auto z = small_spec();
    z.replicas = 0;
    CHECK_THROWS_AS(validate_spec(z), InvalidArgument);
}

TEST_CASE("ensembles are deterministic and thread-count independent") {
    auto a = small_spec();
    auto b = a;
    b.threads = 1;
    auto ra = run_ensemble(a);
    auto rb = run_ensemble(b);
    CHECK(ra.replicas == rb.replicas);
    CHECK(ra.summary == rb.summary);
    for (std::size_t i = 0; i < ra.replicas.size(); ++i) CHECK(ra.replicas[i].seed == replica_seed(a.seed, i));
    auto c = a;
    c.seed = 6;
    CHECK(!(run_ensemble(c).replicas == ra.replicas));
}

TEST_CASE("one replica reproduces the standalone computation") {
    auto s = small_spec();
    s.replicas = 1;
    auto rec = run_ensemble(s);
    REQUIRE(rec.replicas.size() == 1);
    CHECK(rec.replicas[0] == run_replica(s, 0));
    ReplicaResult direct;
    find_experiment("shape_check").replica(s, replica_seed(s.seed, 0), direct);
    CHECK(direct.scalars == rec.replicas[0].scalars);
    CHECK(rec.summary.estimates.at("ratio_t") == direct.scalars.at("ratio_t"));
}

TEST_CASE("persist and load round trip; evaluation from disk matches") {
    auto dir = scratch("roundtrip");
    auto s = small_spec("tail_check");
    s.out_dir = dir.string();
    auto rec = run_ensemble(s);
    auto back = load((dir / "tail_check").string());
    CHECK(back.spec == rec.spec);
    CHECK(back.replicas == rec.replicas);
    CHECK(back.summary == rec.summary);
    CHECK(evaluate(back.spec, back.replicas) == rec.summary);
    CHECK(back.metadata.contains("isa"));
    fs::remove_all(dir);
}

TEST_CASE("corrupted replica line names the file and line") {
    auto dir = scratch("corrupt");
    auto s = small_spec();
    s.out_dir = dir.string();
    run_ensemble(s);
    auto file = dir / "shape_check" / "replicas.jsonl";
    std::vector<std::string> lines;
    {
        std::ifstream in(file);
        for (std::string l; std::getline(in, l);) lines.push_back(l);
    }
    lines[2] = "{\"replica\": 2, \"seed\": ";
    {
        std::ofstream out(file);
        for (const auto& l : lines) out << l << '\n';
    }
    try {
        load((dir / "shape_check").string());
        FAIL("expected a schema error");
    } catch (const SchemaError& e) {
        std::string msg = e.what();
        CHECK(msg.find("replicas.jsonl:3") != std::string::npos);
    }
    fs::remove_all(dir);
}

TEST_CASE("exclusions are reported and bound validity") {
    std::vector<ReplicaResult> reps(10);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        reps[i].replica = i;
        reps[i].scalars["L"] = 40.0;
    }
    auto s = small_spec("tail_check");
    auto ok = evaluate(s, reps);
    CHECK(ok.valid);
    CHECK(ok.used == 10);
    reps[0].excluded = true;
    reps[0].scalars.clear();
    auto one = evaluate(s, reps);
    CHECK(one.excluded == 1);
    CHECK(one.excluded_fraction == doctest::Approx(0.1));
    CHECK(one.valid);
    reps[1].excluded = true;
    reps[1].scalars.clear();
    auto two = evaluate(s, reps);
    CHECK(!two.valid);
    CHECK(!two.pass);
    for (const auto& v : two.verdicts) CHECK(v.n == 8);
}

TEST_CASE("non-finite numbers survive as null") {
    ReplicaResult r;
    r.scalars["nan"] = std::numeric_limits<double>::quiet_NaN();
    r.series["s"] = {1.0, std::numeric_limits<double>::infinity()};
    nlohmann::json j = r;
    CHECK(j["scalars"]["nan"].is_null());
    auto back = j.get<ReplicaResult>();
    CHECK(std::isnan(back.scalars.at("nan")));
    CHECK(std::isnan(back.series.at("s")[1]));
}

TEST_CASE("spec json: partial documents and unknown fields") {
    ExperimentSpec s;
    s.horizon = 7;
    from_json(nlohmann::json{{"lambda", 0.5}}, s);
    CHECK(s.lambda == 0.5);
    CHECK(s.horizon == 7);
    CHECK_THROWS_AS(from_json(nlohmann::json{{"lamda", 0.5}}, s), SchemaError);
}
