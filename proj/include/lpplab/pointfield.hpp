#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpplab/geometry.hpp"

namespace lpplab {

struct Window {
    double x_max = 0.0;
    double t_max = 0.0;

    friend bool operator==(const Window&, const Window&) = default;
};

enum class PointKind : std::uint8_t { bulk, source, sink };

/// A configuration point tagged with the process it came from.
struct ConfigPoint {
    PlanarPoint p;
    PointKind kind = PointKind::bulk;

    friend bool operator==(const ConfigPoint&, const ConfigPoint&) = default;
};

/// One realization of the bulk, source and sink Poisson processes.
///
/// Windows are closed at 0 and open at the far edge. Bulk points are stored
/// in increasing t, sources and sinks in increasing coordinate. Abscissas of
/// bulk points and sources are pairwise distinct, as are ordinates of bulk
/// points and sinks.
struct PointConfig {
    std::vector<PlanarPoint> bulk;
    std::vector<double> sources;
    std::vector<double> sinks;
    double lambda = 0.0;
    double rho = 0.0;
    Window window;
    std::uint64_t seed = 0;

    std::size_t size() const { return bulk.size() + sources.size() + sinks.size(); }

    friend bool operator==(const PointConfig&, const PointConfig&) = default;
};

/// Samples a configuration. Bulk, sources and sinks are drawn from the
/// Stream::bulk / sources / sinks substreams of `seed`; coordinate collisions
/// are redrawn from Stream::repair.
PointConfig sample_config(double lambda, double rho, Window window, std::uint64_t seed);

/// Builds a configuration from explicit coordinates (sorted and validated).
PointConfig make_config(std::vector<PlanarPoint> bulk, std::vector<double> sources,
                        std::vector<double> sinks, Window window, double lambda = 0.0,
                        double rho = 0.0, std::uint64_t seed = 0);

/// Throws InvalidArgument if any PointConfig invariant is broken.
void validate(const PointConfig& config);

/// Swaps the roles of the axes: (x, t) -> (t, x), sources <-> sinks.
PointConfig transpose(const PointConfig& config);

/// All points ordered by (x, t).
std::vector<ConfigPoint> points_by_x(const PointConfig& config);
/// All points ordered by (t, x).
std::vector<ConfigPoint> points_by_t(const PointConfig& config);

void to_json(nlohmann::json& j, const PointConfig& c);
void from_json(const nlohmann::json& j, PointConfig& c);

void save_config(const PointConfig& config, const std::string& path);
PointConfig load_config(const std::string& path);

}  // namespace lpplab
