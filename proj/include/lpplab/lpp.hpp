#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lpplab/pointfield.hpp"

namespace lpplab {

/// Level sets of the last-passage time from the origin.
///
/// `points` holds every configuration point ordered by (x, t) and `level`
/// its chain length L(0, P), counting P itself. `levels[k - 1]` lists the
/// level-k points by increasing x (and so strictly decreasing t).
struct LevelDecomposition {
    std::vector<ConfigPoint> points;
    std::vector<int> level;
    std::vector<std::vector<ConfigPoint>> levels;
    int max_complete_level = 0;

    int num_levels() const { return static_cast<int>(levels.size()); }
    const std::vector<ConfigPoint>& at(int k) const;
    /// Level of a configuration point, or nullopt if `p` is not one.
    std::optional<int> level_of(const PlanarPoint& p) const;
};

struct BetaPoint {
    PlanarPoint location;
    int level = 0;

    friend bool operator==(const BetaPoint&, const BetaPoint&) = default;
};

/// P_1 ≺ P_2 ≺ ... with P_n a concave corner of level n. `truncated` is set
/// when the path stopped before max_complete_level because the next step
/// would leave the window.
struct BetaPath {
    std::vector<BetaPoint> points;
    bool truncated = false;

    std::size_t size() const { return points.size(); }
};

/// A maximal chain from `start` to `end`; `points` excludes both endpoints
/// unless they are configuration points themselves.
struct Geodesic {
    PlanarPoint start;
    PlanarPoint end;
    std::vector<ConfigPoint> points;

    std::size_t length() const { return points.size(); }
};

enum class PathStrategy { leftmost, rightmost, uniform };

/// Longest chain of configuration points c != p with p ≺ c ≺ q (weak, closed).
int last_passage(const PointConfig& config, const PlanarPoint& p, const PlanarPoint& q);

LevelDecomposition level_decomposition(const PointConfig& config);

/// L(0, q) read off a decomposition: the largest level among points ≺ q.
int last_passage_from_origin(const LevelDecomposition& d, const PlanarPoint& q);

/// Interior concave corners of level k: (x_{i+1}, t_i) for consecutive points.
std::vector<BetaPoint> beta_points(const LevelDecomposition& d, int k);

/// Level-k corners admissible after `from`: the index range [first, last]
/// into beta_points(d, k), empty when first > last.
std::pair<int, int> admissible_range(const LevelDecomposition& d, int k, const PlanarPoint& from);

/// `seed` is only used by the uniform strategy.
BetaPath enumerate_beta_path(const LevelDecomposition& d, PathStrategy strategy,
                             std::uint64_t seed = 0);

/// Uppermost maximal chain from the origin to q.
Geodesic maximal_path(const LevelDecomposition& d, const PlanarPoint& q);
Geodesic maximal_path(const PointConfig& config, const PlanarPoint& q);

/// The pair (upper, lower) of geodesics from the origin to P_n that enclose
/// the prefix P_1..P_n. Throws TruncationError if a level runs out.
std::pair<Geodesic, Geodesic> enclosing_geodesics(const LevelDecomposition& d,
                                                  const BetaPath& beta, int n);

/// Configuration points q with p ≺ q, q != p, lying on a maximal chain
/// through p.
std::vector<PlanarPoint> r_out(const PointConfig& config, const PlanarPoint& p);
std::vector<PlanarPoint> r_out(const LevelDecomposition& d, const PlanarPoint& p);

/// Absolute difference of the polar angles of two nonzero vectors.
double ang(const PlanarPoint& p, const PlanarPoint& q);

/// Closed cone with apex `apex` and axis along the ray from 0 through apex.
bool cone_contains(const PlanarPoint& apex, double half_angle, const PlanarPoint& q);

/// α(q) − α(p) − α(q − p) with α(x, t) = 2√(xt).
double curvature_defect(const PlanarPoint& p, const PlanarPoint& q);

}  // namespace lpplab
