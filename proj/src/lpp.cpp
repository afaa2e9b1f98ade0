#include "lpplab/lpp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpplab/error.hpp"
#include "lpplab/rng.hpp"

namespace lpplab {

namespace {

bool lex_less(const PlanarPoint& a, const PlanarPoint& b) {
    return a.x < b.x || (a.x == b.x && a.t < b.t);
}

// Patience step for the longest nondecreasing subsequence in t; returns the
// chain length ending at a point with ordinate t.
int extend(std::vector<double>& tails, double t) {
    auto it = std::upper_bound(tails.begin(), tails.end(), t);
    int len = static_cast<int>(it - tails.begin()) + 1;
    if (it == tails.end())
        tails.push_back(t);
    else
        *it = t;
    return len;
}

// First index whose ordinate is <= t (level points have decreasing t).
std::size_t first_t_at_most(const std::vector<ConfigPoint>& lv, double t) {
    return static_cast<std::size_t>(
        std::partition_point(lv.begin(), lv.end(), [t](const ConfigPoint& c) { return c.p.t > t; }) -
        lv.begin());
}

// Number of points with abscissa <= x.
std::size_t count_x_at_most(const std::vector<ConfigPoint>& lv, double x) {
    return static_cast<std::size_t>(
        std::partition_point(lv.begin(), lv.end(), [x](const ConfigPoint& c) { return c.p.x <= x; }) -
        lv.begin());
}

// Number of points with abscissa < x.
std::size_t count_x_below(const std::vector<ConfigPoint>& lv, double x) {
    return static_cast<std::size_t>(
        std::partition_point(lv.begin(), lv.end(), [x](const ConfigPoint& c) { return c.p.x < x; }) -
        lv.begin());
}

bool level_has_point_below(const std::vector<ConfigPoint>& lv, const PlanarPoint& q) {
    std::size_t n = count_x_at_most(lv, q.x);
    return n > 0 && lv[n - 1].p.t <= q.t;
}

}  // namespace

const std::vector<ConfigPoint>& LevelDecomposition::at(int k) const {
    require(k >= 1 && k <= num_levels(), "level " + std::to_string(k) + " out of range");
    return levels[static_cast<std::size_t>(k - 1)];
}

std::optional<int> LevelDecomposition::level_of(const PlanarPoint& p) const {
    auto it = std::lower_bound(points.begin(), points.end(), p,
                               [](const ConfigPoint& c, const PlanarPoint& v) { return lex_less(c.p, v); });
    if (it == points.end() || !(it->p == p)) return std::nullopt;
    return level[static_cast<std::size_t>(it - points.begin())];
}

int last_passage(const PointConfig& config, const PlanarPoint& p, const PlanarPoint& q) {
    require(dominates(p, q), "last_passage: p must be weakly below-left of q");
    std::vector<double> tails;
    int best = 0;
    for (const auto& c : points_by_x(config)) {
        if (c.p == p || !dominates(p, c.p) || !dominates(c.p, q)) continue;
        best = std::max(best, extend(tails, c.p.t));
    }
    return best;
}

LevelDecomposition level_decomposition(const PointConfig& config) {
    LevelDecomposition d;
    d.points = points_by_x(config);
    d.level.resize(d.points.size());
    std::vector<double> tails;
    for (std::size_t i = 0; i < d.points.size(); ++i) {
        int k = extend(tails, d.points[i].p.t);
        d.level[i] = k;
        if (static_cast<std::size_t>(k) > d.levels.size()) d.levels.emplace_back();
        d.levels[static_cast<std::size_t>(k - 1)].push_back(d.points[i]);
    }
    // The window is open at its far edges, so every sampled level is whole;
    // truncation shows up in the path operations instead.
    d.max_complete_level = d.num_levels();
    return d;
}

int last_passage_from_origin(const LevelDecomposition& d, const PlanarPoint& q) {
    // Levels below q form a prefix 1..L, so bisect on k.
    int lo = 0, hi = d.num_levels();
    while (lo < hi) {
        int mid = lo + (hi - lo + 1) / 2;
        if (level_has_point_below(d.at(mid), q))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

std::vector<BetaPoint> beta_points(const LevelDecomposition& d, int k) {
    require(k >= 1 && k <= d.max_complete_level,
            "beta_points: level " + std::to_string(k) + " out of range");
    const auto& lv = d.at(k);
    std::vector<BetaPoint> out;
    for (std::size_t i = 0; i + 1 < lv.size(); ++i) out.push_back({{lv[i + 1].p.x, lv[i].p.t}, k});
    return out;
}

std::pair<int, int> admissible_range(const LevelDecomposition& d, int k, const PlanarPoint& from) {
    const auto& lv = d.at(k);
    int m = static_cast<int>(lv.size());
    if (m < 2) return {0, -1};
    // Corner i sits at (x_{i+1}, t_i).
    int first = std::max(0, static_cast<int>(count_x_below(lv, from.x)) - 1);
    auto at_least = std::partition_point(lv.begin(), lv.end(),
                                         [&](const ConfigPoint& c) { return c.p.t >= from.t; });
    int last = std::min(m - 2, static_cast<int>(at_least - lv.begin()) - 1);
    return {first, last};
}

BetaPath enumerate_beta_path(const LevelDecomposition& d, PathStrategy strategy, std::uint64_t seed) {
    BetaPath path;
    RandomStream rng(seed, Stream::path_choice);
    PlanarPoint from{0.0, 0.0};
    for (int k = 1; k <= d.max_complete_level; ++k) {
        const auto& lv = d.at(k);
        auto [lo, hi] = admissible_range(d, k, from);
        if (lo > hi) {
            path.truncated = true;
            break;
        }
        int pick = lo;
        switch (strategy) {
            case PathStrategy::leftmost:
                // The staircase must cross the vertical through `from`
                // inside the window, or the true leftmost corner is on the
                // top edge.
                if (lv[static_cast<std::size_t>(lo)].p.x > from.x) path.truncated = true;
                pick = lo;
                break;
            case PathStrategy::rightmost:
                if (lv[static_cast<std::size_t>(hi + 1)].p.t > from.t) path.truncated = true;
                pick = hi;
                break;
            case PathStrategy::uniform:
                pick = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
                break;
        }
        if (path.truncated) break;
        BetaPoint b{{lv[static_cast<std::size_t>(pick + 1)].p.x, lv[static_cast<std::size_t>(pick)].p.t}, k};
        path.points.push_back(b);
        from = b.location;
    }
    return path;
}

Geodesic maximal_path(const LevelDecomposition& d, const PlanarPoint& q) {
    Geodesic g{{0.0, 0.0}, q, {}};
    int len = last_passage_from_origin(d, q);
    PlanarPoint cur = q;
    for (int k = len; k >= 1; --k) {
        const auto& lv = d.at(k);
        std::size_t a = first_t_at_most(lv, cur.t);
        // a exists and lies left of cur because some level-k point is below cur.
        g.points.push_back(lv[a]);
        cur = lv[a].p;
    }
    std::reverse(g.points.begin(), g.points.end());
    return g;
}

Geodesic maximal_path(const PointConfig& config, const PlanarPoint& q) {
    return maximal_path(level_decomposition(config), q);
}

std::pair<Geodesic, Geodesic> enclosing_geodesics(const LevelDecomposition& d, const BetaPath& beta,
                                                  int n) {
    require(n >= 0 && static_cast<std::size_t>(n) <= beta.size(),
            "enclosing_geodesics: n exceeds the path length");
    Geodesic upper{{0.0, 0.0}, {0.0, 0.0}, {}};
    Geodesic lower = upper;
    if (n == 0) return {upper, lower};

    const BetaPoint& pn = beta.points[static_cast<std::size_t>(n - 1)];
    require(pn.level == n, "enclosing_geodesics: beta path levels must be 1..n");
    upper.end = lower.end = pn.location;

    const auto& top = d.at(n);
    std::size_t right = count_x_below(top, pn.location.x);
    if (right == 0 || right >= top.size() || top[right].p.x != pn.location.x ||
        top[right - 1].p.t != pn.location.t)
        throw InvalidArgument("enclosing_geodesics: P_n is not a corner of level n");

    ConfigPoint gp = top[right - 1];
    ConfigPoint gm = top[right];
    upper.points.push_back(gp);
    lower.points.push_back(gm);
    for (int j = n - 1; j >= 1; --j) {
        const auto& lv = d.at(j);
        const PlanarPoint& pj = beta.points[static_cast<std::size_t>(j - 1)].location;
        auto pick = [&](const ConfigPoint& g, bool up) -> ConfigPoint {
            // Level-j points below g: indices [a, b].
            long a = static_cast<long>(first_t_at_most(lv, g.p.t));
            long b = static_cast<long>(count_x_at_most(lv, g.p.x)) - 1;
            long split = static_cast<long>(count_x_below(lv, pj.x));
            long idx = up ? std::min(b, split - 1) : std::max(a, split);
            if (idx < a || idx > b)
                throw TruncationError("enclosing_geodesics: level " + std::to_string(j) +
                                      " has no admissible point");
            return lv[static_cast<std::size_t>(idx)];
        };
        gp = pick(gp, true);
        gm = pick(gm, false);
        upper.points.push_back(gp);
        lower.points.push_back(gm);
    }
    std::reverse(upper.points.begin(), upper.points.end());
    std::reverse(lower.points.begin(), lower.points.end());
    return {upper, lower};
}

std::vector<PlanarPoint> r_out(const LevelDecomposition& d, const PlanarPoint& p) {
    auto it = std::lower_bound(d.points.begin(), d.points.end(), p,
                               [](const ConfigPoint& c, const PlanarPoint& v) { return lex_less(c.p, v); });
    require(it != d.points.end() && it->p == p, "r_out: p is not a configuration point");
    std::size_t ip = static_cast<std::size_t>(it - d.points.begin());
    int base = d.level[ip];

    std::vector<PlanarPoint> out;
    std::vector<double> tails;
    for (std::size_t i = ip + 1; i < d.points.size(); ++i) {
        const auto& c = d.points[i];
        if (c.p.t < p.t) continue;  // x >= p.x holds from the ordering
        int rel = extend(tails, c.p.t);
        if (base + rel == d.level[i]) out.push_back(c.p);
    }
    return out;
}

std::vector<PlanarPoint> r_out(const PointConfig& config, const PlanarPoint& p) {
    return r_out(level_decomposition(config), p);
}

double ang(const PlanarPoint& p, const PlanarPoint& q) {
    require(!(p.x == 0.0 && p.t == 0.0) && !(q.x == 0.0 && q.t == 0.0), "ang: zero vector");
    return std::abs(std::atan2(p.t, p.x) - std::atan2(q.t, q.x));
}

bool cone_contains(const PlanarPoint& apex, double half_angle, const PlanarPoint& q) {
    require(!(apex.x == 0.0 && apex.t == 0.0), "cone_contains: zero apex");
    require(half_angle >= 0.0, "cone_contains: negative half-angle");
    PlanarPoint v{q.x - apex.x, q.t - apex.t};
    if (v.x == 0.0 && v.t == 0.0) return true;
    return ang(apex, v) <= half_angle;
}

double curvature_defect(const PlanarPoint& p, const PlanarPoint& q) {
    require(dominates(p, q) && !(p == q), "curvature_defect: need p ≺ q, p != q");
    return 2.0 * std::sqrt(q.x * q.t) - 2.0 * std::sqrt(p.x * p.t) -
           2.0 * std::sqrt((q.x - p.x) * (q.t - p.t));
}

}  // namespace lpplab
