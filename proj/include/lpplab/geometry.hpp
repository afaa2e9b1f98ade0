#pragma once

#include <compare>
#include <numbers>

namespace lpplab {

/// A point of the (x, t) quadrant.
struct PlanarPoint {
    double x = 0.0;
    double t = 0.0;

    friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

/// A point of the (z, s) substrate/time picture.
struct RotatedPoint {
    double z = 0.0;
    double s = 0.0;

    friend bool operator==(const RotatedPoint&, const RotatedPoint&) = default;
};

inline constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

/// Weak domination: both coordinates of `p` are <= those of `q`.
constexpr bool dominates(const PlanarPoint& p, const PlanarPoint& q) {
    return p.x <= q.x && p.t <= q.t;
}

// The x-axis (sources) lands on {z = s}, the t-axis (sinks) on {z = -s}.
constexpr RotatedPoint rotate(const PlanarPoint& p) {
    return {(p.x - p.t) * kInvSqrt2, (p.x + p.t) * kInvSqrt2};
}

/// Inverse of rotate. Throws InvalidArgument when |z| > s.
PlanarPoint unrotate(const RotatedPoint& q);

}  // namespace lpplab
