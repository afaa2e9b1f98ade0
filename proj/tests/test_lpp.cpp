#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lpplab/error.hpp"
#include "lpplab/lpp.hpp"
#include "oracles.hpp"

using namespace lpplab;

namespace {

PointConfig bulk_only(std::vector<PlanarPoint> pts, double side = 10.0) {
    return make_config(std::move(pts), {}, {}, {side, side});
}

// One β-point per level: (2,2), (4,4), (6,6).
PointConfig forced_staircase() {
    return make_config({{1.5, 4.0}, {4.0, 1.5}, {3.5, 6.0}, {6.0, 3.5}}, {2.0}, {2.0}, {7.0, 7.0});
}

const double kParams[4][2] = {{1.0, 1.0}, {0.5, 1.0}, {1.0, 0.5}, {0.7, 0.9}};

}  // namespace

TEST_CASE("last_passage examples") {
    CHECK(last_passage(bulk_only({}), {0, 0}, {4, 4}) == 0);
    CHECK(last_passage(bulk_only({{1, 2}, {2, 1}, {3, 3}}), {0, 0}, {4, 4}) == 2);
    auto c = make_config({{1.0, 1.0}}, {0.5, 1.5}, {}, {10.0, 10.0});
    CHECK(last_passage(c, {0, 0}, {2, 2}) == 2);
    CHECK_THROWS_AS(last_passage(c, {3, 3}, {2, 2}), InvalidArgument);
}

TEST_CASE("last_passage agrees with subset enumeration") {
    lpplab::RandomStream q(77, Stream::synthetic);
    for (std::uint64_t s = 0; s < 300; ++s) {
        auto c = oracle::tiny_config(s, 12);
        auto pts = oracle::all_points(c);
        for (int i = 0; i < 5; ++i) {
            PlanarPoint p{static_cast<double>(q.below(12)), static_cast<double>(q.below(12))};
            PlanarPoint r{p.x + static_cast<double>(q.below(10)), p.t + static_cast<double>(q.below(10))};
            REQUIRE(last_passage(c, p, r) == oracle::chain_by_subsets(pts, p, r));
        }
    }
}

TEST_CASE("level decomposition examples") {
    auto one = level_decomposition(bulk_only({{1, 1}}));
    CHECK(one.level_of({1, 1}) == 1);
    CHECK(!one.level_of({2, 2}).has_value());
    auto chain = level_decomposition(bulk_only({{1, 1}, {2, 2}, {3, 3}}));
    CHECK(chain.level_of({1, 1}) == 1);
    CHECK(chain.level_of({2, 2}) == 2);
    CHECK(chain.level_of({3, 3}) == 3);
    CHECK(chain.num_levels() == 3);
}

TEST_CASE("levels agree with the quadratic recursion") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto c = sample_config(kParams[s % 4][0], kParams[s % 4][1], {14.0, 14.0}, 500 + s);
        auto d = level_decomposition(c);
        auto pts = oracle::all_points(c);
        std::sort(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.x < b.x || (a.x == b.x && a.t < b.t); });
        auto want = oracle::levels_by_dp(pts);
        REQUIRE(d.points.size() == pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) CHECK(d.level_of(pts[i]) == want[i]);
        // Antichains: no level-k point dominates another.
        for (int k = 1; k <= d.num_levels(); ++k) {
            const auto& lv = d.at(k);
            for (std::size_t i = 1; i < lv.size(); ++i) {
                CHECK(lv[i - 1].p.x < lv[i].p.x);
                CHECK(lv[i - 1].p.t > lv[i].p.t);
            }
        }
    }
}

TEST_CASE("beta point examples") {
    auto d = level_decomposition(bulk_only({{1, 3}, {2, 2}, {3, 1}}));
    auto b = beta_points(d, 1);
    REQUIRE(b.size() == 2);
    CHECK(b[0].location == PlanarPoint{2, 3});
    CHECK(b[1].location == PlanarPoint{3, 2});
    CHECK(beta_points(level_decomposition(bulk_only({{1, 1}})), 1).empty());
    CHECK_THROWS_AS(beta_points(d, 2), InvalidArgument);
    CHECK_THROWS_AS(beta_points(d, 0), InvalidArgument);
}

TEST_CASE("forced staircase: every strategy gives the same path") {
    auto d = level_decomposition(forced_staircase());
    auto l = enumerate_beta_path(d, PathStrategy::leftmost);
    auto r = enumerate_beta_path(d, PathStrategy::rightmost);
    auto u = enumerate_beta_path(d, PathStrategy::uniform, 9);
    REQUIRE(l.size() == 3);
    CHECK(l.points == r.points);
    CHECK(l.points == u.points);
    CHECK(l.points[2].location == PlanarPoint{6, 6});
}

TEST_CASE("maximal_path examples and length") {
    CHECK(maximal_path(bulk_only({}), {4, 4}).length() == 0);
    auto g = maximal_path(bulk_only({{1, 2}, {2, 1}, {3, 3}}), {4, 4});
    REQUIRE(g.length() == 2);
    CHECK(g.points[0].p == PlanarPoint{1, 2});  // uppermost predecessor
    CHECK(g.points[1].p == PlanarPoint{3, 3});
    for (std::uint64_t s = 0; s < 200; ++s) {
        auto c = oracle::tiny_config(s + 1000, 12);
        PlanarPoint q{20.0, 20.0};
        auto path = maximal_path(c, q);
        REQUIRE(static_cast<int>(path.length()) == last_passage(c, {0, 0}, q));
        for (std::size_t i = 1; i < path.points.size(); ++i)
            CHECK(dominates(path.points[i - 1].p, path.points[i].p));
    }
}

TEST_CASE("r_out against the chain oracle") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        auto c = oracle::tiny_config(s + 2000, 10);
        auto pts = oracle::all_points(c);
        auto d = level_decomposition(c);
        for (const auto& p : pts) {
            auto got = r_out(d, p);
            std::vector<PlanarPoint> want;
            int lp = oracle::chain_by_subsets(pts, {0, 0}, p);
            for (const auto& q : pts) {
                if (q == p || !dominates(p, q)) continue;
                if (lp + oracle::chain_by_subsets(pts, p, q) == oracle::chain_by_subsets(pts, {0, 0}, q))
                    want.push_back(q);
            }
            auto key = [](auto& a, auto& b) { return a.x < b.x || (a.x == b.x && a.t < b.t); };
            std::sort(got.begin(), got.end(), key);
            std::sort(want.begin(), want.end(), key);
            REQUIRE(got == want);
        }
    }
    CHECK_THROWS_AS(r_out(bulk_only({{1, 1}}), PlanarPoint{2, 2}), InvalidArgument);
}

TEST_CASE("sandwich: leftmost >= any path >= rightmost in t/x, per level") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto c = sample_config(kParams[s % 4][0], kParams[s % 4][1], {50.0, 50.0}, 1000 + s);
        auto d = level_decomposition(c);
        auto l = enumerate_beta_path(d, PathStrategy::leftmost);
        auto r = enumerate_beta_path(d, PathStrategy::rightmost);
        for (int j = 0; j < 50; ++j) {
            auto u = enumerate_beta_path(d, PathStrategy::uniform, replica_seed(s, j));
            for (std::size_t n = 1; n < u.size(); ++n) CHECK(dominates(u.points[n - 1].location, u.points[n].location));
            std::size_t m = std::min({u.size(), l.size(), r.size()});
            for (std::size_t n = 0; n < m; ++n) {
                auto ratio = [&](const BetaPath& b) { return b.points[n].location.t / b.points[n].location.x; };
                CHECK(ratio(r) <= ratio(u));
                CHECK(ratio(u) <= ratio(l));
            }
        }
    }
}

TEST_CASE("enclosing geodesics") {
    auto d0 = level_decomposition(forced_staircase());
    auto p0 = enumerate_beta_path(d0, PathStrategy::leftmost);
    auto [u0, l0] = enclosing_geodesics(d0, p0, 0);
    CHECK(u0.length() == 0);
    CHECK(l0.length() == 0);
    CHECK_THROWS_AS(enclosing_geodesics(d0, p0, 4), InvalidArgument);

    for (std::uint64_t s = 0; s < 20; ++s) {
        auto c = sample_config(kParams[s % 4][0], kParams[s % 4][1], {50.0, 50.0}, 3000 + s);
        auto d = level_decomposition(c);
        for (int j = 0; j < 10; ++j) {
            auto path = enumerate_beta_path(d, PathStrategy::uniform, replica_seed(s, j));
            for (int n = 1; n <= static_cast<int>(path.size()); ++n) {
                auto [up, lo] = enclosing_geodesics(d, path, n);
                REQUIRE(up.length() == static_cast<std::size_t>(n));
                REQUIRE(lo.length() == static_cast<std::size_t>(n));
                CHECK(up.end == path.points[n - 1].location);
                for (int k = 1; k <= n; ++k) {
                    const auto& pk = path.points[k - 1].location;
                    const auto& a = up.points[k - 1].p;
                    const auto& b = lo.points[k - 1].p;
                    CHECK(d.level_of(a) == k);
                    CHECK(d.level_of(b) == k);
                    CHECK((a.x <= pk.x && a.t >= pk.t));
                    CHECK((b.x >= pk.x && b.t <= pk.t));
                    if (k > 1) {
                        CHECK(dominates(up.points[k - 2].p, a));
                        CHECK(dominates(lo.points[k - 2].p, b));
                    }
                }
                CHECK(dominates(up.points.back().p, up.end));
                CHECK(dominates(lo.points.back().p, lo.end));
            }
        }
    }
}

TEST_CASE("angles, cones and curvature") {
    const double pi = std::numbers::pi;
    CHECK(ang({1, 0}, {0, 1}) == doctest::Approx(pi / 2));
    CHECK(ang({1, 1}, {2, 2}) == doctest::Approx(0.0));
    CHECK(ang({1, 0}, {1, 1}) == doctest::Approx(pi / 4));
    CHECK_THROWS_AS(ang({0, 0}, {1, 1}), InvalidArgument);

    CHECK(cone_contains({1, 2}, 0.0, {2, 4}));
    CHECK(cone_contains({1, 2}, pi / 2, {5, 2}));
    CHECK(cone_contains({1, 1}, pi / 4, {2, 1}));  // boundary ray is inside
    CHECK(!cone_contains({1, 1}, pi / 8, {2, 1}));
    CHECK_THROWS_AS(cone_contains({0, 0}, 0.1, {1, 1}), InvalidArgument);

    CHECK(curvature_defect({1, 1}, {2, 2}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(curvature_defect({1, 1}, {2, 3}) == doctest::Approx(2 * std::sqrt(6.0) - 2 - 2 * std::sqrt(2.0)));
    CHECK(curvature_defect({1, 1}, {2, 3}) == doctest::Approx(0.0707).epsilon(0.01));
    lpplab::RandomStream r(5, Stream::synthetic);
    for (int i = 0; i < 1000; ++i) {
        PlanarPoint p{r.uniform() * 5, r.uniform() * 5};
        PlanarPoint q{p.x + r.uniform() * 5, p.t + r.uniform() * 5};
        CHECK(curvature_defect(p, q) >= -1e-12);
    }
    CHECK_THROWS_AS(curvature_defect({2, 2}, {1, 3}), InvalidArgument);
}
