#pragma once

#include <functional>
#include <ostream>
#include <span>
#include <string>

#include "lpplab/hammersley.hpp"
#include "lpplab/hydro.hpp"
#include "lpplab/lpp.hpp"
#include "lpplab/png.hpp"

namespace lpplab {

/// level,x,t,kind with kind "point" for configuration points, "beta" for corners.
void write_levels_csv(std::ostream& out, const LevelDecomposition& d);

/// particle,time,position: birth, every jump, and the death if any.
void write_trajectories_csv(std::ostream& out, const HammersleyRun& run);

/// Space-time diagram: vertical and horizontal trajectory segments, with
/// left turns marked.
void write_trajectories_svg(std::ostream& out, const HammersleyRun& run);

/// z,s,h on an nz by ns grid of the cone |z| <= s <= horizon.
void write_heights_csv(std::ostream& out, const HeightProfile& h, int nz, int ns);

/// Empirical CDF of `samples` overlaid on `reference` over [lo, hi].
void write_cdf_svg(std::ostream& out, std::span<const double> samples,
                   const std::function<double(double)>& reference, double lo, double hi,
                   const std::string& title);

// Reference tables, `n` rows each.
void tabulate_cdf(std::ostream& out, const ModelParams& p, int n);
void tabulate_shape(std::ostream& out, double horizon, int n);
void tabulate_burgers(std::ostream& out, const ModelParams& p, int n);

}  // namespace lpplab
