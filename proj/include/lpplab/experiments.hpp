#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "lpplab/harness.hpp"
#include "lpplab/pointfield.hpp"

namespace lpplab {

struct ExperimentDefaults {
    double lambda = 0.0;
    double rho = 0.0;
    double horizon = 0.0;
    std::size_t replicas = 1;
};

struct ExperimentDef {
    std::string_view id;
    std::string_view title;
    ExperimentDefaults defaults;
    /// Parameter preconditions; throws InvalidArgument.
    void (*check)(const ExperimentSpec& spec);
    /// Fills scalars/series of one replica from its seed. Model truncation
    /// signals propagate and turn into exclusions.
    void (*replica)(const ExperimentSpec& spec, std::uint64_t seed, ReplicaResult& out);
    /// Estimates and verdicts from the non-excluded replicas.
    void (*evaluate)(const ExperimentSpec& spec, const std::vector<const ReplicaResult*>& used,
                     Summary& out);
};

const std::vector<ExperimentDef>& experiments();
/// Throws InvalidArgument for an unknown id.
const ExperimentDef& find_experiment(std::string_view id);

/// Window for a second-class particle observed up to time T: wide enough
/// for speeds up to 1.1 λ⁻² plus a T^(2/3) margin.
Window scp_window(double lambda, double horizon);
/// Square window covering the (z, s) triangle up to s = horizon.
Window png_window(double horizon);

}  // namespace lpplab
