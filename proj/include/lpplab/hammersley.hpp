#pragma once

#include <optional>
#include <vector>

#include "lpplab/pointfield.hpp"

namespace lpplab {

struct Jump {
    double t = 0.0;
    double x = 0.0;  // position after the jump

    friend bool operator==(const Jump&, const Jump&) = default;
};

/// Space-time path of the level-k particle.
///
/// A sink that fires with no particle present gets a degenerate trajectory
/// born and killed at (0, s), so that `trajectories[k - 1]` always exists
/// for every level k.
struct Trajectory {
    int level = 0;
    PlanarPoint birth;
    PointKind born_from = PointKind::bulk;
    std::vector<Jump> jumps;
    std::optional<double> death;  // sink time; nullopt = alive at the window edge

    /// Configuration points on the path, by increasing x.
    std::vector<PlanarPoint> level_points() const;
    /// Corners where the path turns from vertical to leftward, by increasing x.
    std::vector<PlanarPoint> left_turns() const;
    /// Position at time t, or nullopt if the particle is not alive then.
    std::optional<double> position_at(double t) const;
};

struct HammersleyRun {
    Window window;
    std::vector<Trajectory> trajectories;  // indexed by level - 1
    std::vector<double> sinks;
};

HammersleyRun evolve(const PointConfig& config);

/// Particles in (0, x] at time t plus sinks in (0, t], after all events at t.
int count_N(const HammersleyRun& run, double x, double t);

/// Sorted particle positions at time t.
std::vector<double> positions_at(const HammersleyRun& run, double t);

/// Sorted particle positions after every event of the window, without
/// recording trajectories.
std::vector<double> final_positions(const PointConfig& config);

enum class ScpFlavor { normal, dual };

/// Jump points (X_{τ_n}, τ_n), n >= 0, starting at the origin, as (x, t)
/// pairs in the original coordinates. For the dual flavor the path is the
/// transposed one, so that it also moves up and to the right.
struct ScpTrajectory {
    ScpFlavor flavor = ScpFlavor::normal;
    std::vector<PlanarPoint> points;
    /// The path left the region determined by in-window events.
    bool truncated = false;
    /// Largest time (normal) or abscissa (dual) up to which the path is exact.
    double valid_until = 0.0;

    std::size_t jumps() const { return points.empty() ? 0 : points.size() - 1; }
    /// X_t for the normal flavor, X*_t for the dual one. Throws
    /// TruncationError past the exact region.
    double position_at(double t) const;
};

/// Throws NoSinkExit if no particle leaves through a sink in the window.
ScpTrajectory second_class(const PointConfig& config);
/// Second-class particle of the transposed dynamics.
ScpTrajectory dual_second_class(const PointConfig& config);

}  // namespace lpplab
