#pragma once

#include <cstdint>
#include <vector>

#include "lpplab/pointfield.hpp"

namespace lpplab {

enum class NucleationOrigin : std::uint8_t { bulk, plus_boundary, minus_boundary };

struct Nucleation {
    RotatedPoint at;
    NucleationOrigin origin = NucleationOrigin::bulk;
};

/// Rotated configuration, ordered by time s. Sources land on {z = s}
/// (plus boundary), sinks on {z = -s} (minus boundary).
std::vector<Nucleation> nucleations_from(const PointConfig& config);

/// Space-time record of one interior step. Up-steps sit at key - s,
/// down-steps at key + s, while born <= s < died.
struct StepRecord {
    bool up = false;
    double key = 0.0;
    double born = 0.0;
    double died = 0.0;  // +inf while alive at the horizon
    int level = 0;
    int type = 0;  // 1 or 2 in two-type mode, 0 otherwise
};

/// h(z, s) for 0 <= s <= horizon. Profiles are upper semicontinuous: at a
/// step position the height takes the larger of the two values.
class HeightProfile {
  public:
    double horizon() const { return horizon_; }
    int height(double z, double s) const;
    const std::vector<StepRecord>& steps() const { return steps_; }
    const std::vector<double>& plus_times() const { return plus_; }
    const std::vector<double>& minus_times() const { return minus_; }

  private:
    friend class PngEngine;
    double horizon_ = 0.0;
    std::vector<StepRecord> steps_;
    std::vector<double> plus_;   // nucleation times on {z = s}
    std::vector<double> minus_;  // nucleation times on {z = -s}
};

/// Collision points (φ_n, σ_n) between type-1 and type-2 material, n >= 0,
/// starting at (0, 0); `points[n]` is the collision at layer n.
struct InterfaceTrace {
    std::vector<RotatedPoint> points;
    double horizon = 0.0;
    /// Layers whose collision was recorded out of order (after a gap).
    int detached_layers = 0;
    /// Collisions of a type-2 down-step into a type-1 up-step.
    int monotonicity_violations = 0;

    std::size_t size() const { return points.empty() ? 0 : points.size() - 1; }
    /// φ(s) = φ_n on [σ_n, σ_{n+1}), for 0 <= s <= horizon.
    double phi_at(double s) const;
};

struct TwoTypeRun {
    HeightProfile profile;
    InterfaceTrace trace;
};

HeightProfile evolve_png(const std::vector<Nucleation>& nucleations, double horizon);

/// Two-type growth: substrate z < 0 is type 1, z > 0 type 2; a nucleation at
/// exactly z = 0 on the substrate draws its type from Stream::coin of `seed`.
TwoTypeRun evolve_two_type(const std::vector<Nucleation>& nucleations, double horizon,
                           std::uint64_t seed = 0);

}  // namespace lpplab
