#include <doctest.h>

#include "lpplab/error.hpp"
#include "lpplab/hammersley.hpp"
#include "lpplab/lpp.hpp"
#include "lpplab/rng.hpp"

using namespace lpplab;

namespace {
const double kParams[4][2] = {{1.0, 1.0}, {0.5, 1.0}, {1.0, 0.5}, {0.7, 0.9}};
}

TEST_CASE("frozen sources without bulk or sinks") {
    auto c = make_config({}, {1.0, 3.0}, {}, {5.0, 5.0});
    auto run = evolve(c);
    REQUIRE(run.trajectories.size() == 2);
    for (const auto& tr : run.trajectories) {
        CHECK(tr.jumps.empty());
        CHECK(!tr.death.has_value());
        CHECK(tr.birth.t == 0.0);
    }
    CHECK(positions_at(run, 4.0) == std::vector<double>{1.0, 3.0});
}

TEST_CASE("a single bulk point creates one particle") {
    auto run = evolve(make_config({{2.0, 1.0}}, {}, {}, {5.0, 5.0}));
    REQUIRE(run.trajectories.size() == 1);
    CHECK(run.trajectories[0].birth == PlanarPoint{2.0, 1.0});
    CHECK(run.trajectories[0].born_from == PointKind::bulk);
    CHECK(run.trajectories[0].position_at(0.5) == std::nullopt);
    CHECK(run.trajectories[0].position_at(3.0) == 2.0);
}

TEST_CASE("count_N boundary values") {
    auto c = make_config({{2.0, 1.0}}, {1.0, 3.0}, {2.5}, {5.0, 5.0});
    auto run = evolve(c);
    CHECK(count_N(run, 4.0, 0.0) == 2);
    CHECK(count_N(run, 2.0, 0.0) == 1);
    CHECK(count_N(run, 1e-9, 4.0) == 1);
    CHECK_THROWS_AS(count_N(run, 6.0, 1.0), InvalidArgument);
}

TEST_CASE("no sinks means no second-class particle") {
    auto c = sample_config(1.0, 0.0, {20.0, 20.0}, 4);
    CHECK_THROWS_AS(second_class(c), NoSinkExit);
}

TEST_CASE("particle system equals the level sets") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto c = sample_config(kParams[s % 4][0], kParams[s % 4][1], {50.0, 50.0}, 1000 + s);
        auto d = level_decomposition(c);
        auto run = evolve(c);
        REQUIRE(static_cast<int>(run.trajectories.size()) == d.num_levels());
        for (int k = 1; k <= d.num_levels(); ++k) {
            const auto& tr = run.trajectories[k - 1];
            auto lp = tr.level_points();
            const auto& lv = d.at(k);
            REQUIRE(lp.size() == lv.size());
            for (std::size_t i = 0; i < lv.size(); ++i) CHECK(lp[i] == lv[i].p);
            auto bt = beta_points(d, k);
            auto lt = tr.left_turns();
            REQUIRE(bt.size() == lt.size());
            for (std::size_t i = 0; i < lt.size(); ++i) CHECK(bt[i].location == lt[i]);
            for (std::size_t i = 1; i < tr.jumps.size(); ++i) {
                CHECK(tr.jumps[i - 1].t < tr.jumps[i].t);
                CHECK(tr.jumps[i - 1].x > tr.jumps[i].x);
            }
        }
        lpplab::RandomStream q(s, Stream::synthetic);
        for (int i = 0; i < 400; ++i) {
            double x = q.uniform() * 50, t = q.uniform() * 50;
            REQUIRE(count_N(run, x, t) == last_passage(c, {0, 0}, {x, t}));
        }
        // Particles never cross.
        for (double t : {10.0, 25.0, 49.0}) {
            auto pos = positions_at(run, t);
            CHECK(std::is_sorted(pos.begin(), pos.end()));
        }
        CHECK(final_positions(c) == positions_at(run, std::nextafter(c.window.t_max, 0.0)));
    }
}

TEST_CASE("second-class particles follow the extreme β-paths") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto c = sample_config(kParams[s % 4][0], kParams[s % 4][1], {50.0, 50.0}, 2000 + s);
        auto d = level_decomposition(c);
        auto left = enumerate_beta_path(d, PathStrategy::leftmost);
        auto right = enumerate_beta_path(d, PathStrategy::rightmost);
        auto scp = second_class(c);
        auto dual = dual_second_class(c);
        REQUIRE(scp.points.front() == PlanarPoint{0.0, 0.0});
        for (std::size_t i = 1; i < scp.points.size(); ++i) {
            CHECK(scp.points[i - 1].x < scp.points[i].x);
            CHECK(scp.points[i - 1].t < scp.points[i].t);
        }
        std::size_t m = std::min(scp.jumps(), left.size());
        if (!scp.truncated && !left.truncated) CHECK(scp.jumps() == left.size());
        for (std::size_t i = 0; i < m; ++i) CHECK(scp.points[i + 1] == left.points[i].location);
        std::size_t md = std::min(dual.jumps(), right.size());
        for (std::size_t i = 0; i < md; ++i) CHECK(dual.points[i + 1] == right.points[i].location);

        // Dual of the transposed configuration is the normal particle, mirrored.
        auto back = dual_second_class(transpose(c));
        REQUIRE(back.points.size() == scp.points.size());
        for (std::size_t i = 0; i < back.points.size(); ++i)
            CHECK(back.points[i] == PlanarPoint{scp.points[i].t, scp.points[i].x});
    }
}

TEST_CASE("second-class position lookup") {
    auto c = sample_config(1.0, 1.0, {60.0, 40.0}, 17);
    auto scp = second_class(c);
    REQUIRE(scp.jumps() >= 1);
    CHECK(scp.position_at(0.0) == 0.0);
    const auto& p1 = scp.points[1];
    CHECK(scp.position_at(p1.t) == p1.x);
    CHECK(scp.position_at(std::nextafter(p1.t, 0.0)) == 0.0);
    CHECK_THROWS_AS(scp.position_at(scp.valid_until + 1.0), TruncationError);
}
