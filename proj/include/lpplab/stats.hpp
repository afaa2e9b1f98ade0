#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lpplab/hydro.hpp"
#include "lpplab/lpp.hpp"

namespace lpplab {

/// sup_r |F_n(r) − cdf(r)| for the empirical CDF F_n of `samples`.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

struct ExponentFit {
    double slope = 0.0;
    double std_error = 0.0;
    double intercept = 0.0;
};

/// Least-squares slope of log(dispersion) against log(scale).
ExponentFit fit_exponent(std::span<const double> scales, std::span<const double> dispersions);

/// nx × nt square boxes of side `side` with lower-left corner (x0, t0).
struct BoxGrid {
    double x0 = 0.0;
    double t0 = 0.0;
    double side = 1.0;
    int nx = 1;
    int nt = 1;
};

struct PoissonFit {
    double intensity = 0.0;         // mean count per unit area
    double dispersion_index = 0.0;  // variance / mean of the box counts
    std::size_t boxes = 0;          // boxes pooled over all fields
};

/// Points per box, row-major in t then x.
std::vector<double> box_counts(const std::vector<PlanarPoint>& field, const BoxGrid& grid);

/// Intensity and dispersion index of pooled box counts.
PoissonFit poisson_fit(const std::vector<double>& counts, double box_area);

/// Pools box counts over every field of the ensemble.
PoissonFit beta_poisson_test(const std::vector<std::vector<PlanarPoint>>& fields, const BoxGrid& grid,
                             const ModelParams& params);

/// β-points of every level.
std::vector<PlanarPoint> all_beta_points(const LevelDecomposition& d);

struct StraightnessSample {
    PlanarPoint p;
    double norm = 0.0;       // |P|
    double max_angle = 0.0;  // max ang(P, Q) over Q in R^out(P), 0 if empty
    double envelope = 0.0;   // |P|^(-δ)
    std::size_t r_out_size = 0;
};

/// Samples up to `max_points` configuration points with level in
/// [k_lo, k_hi] and slope t/x in [λ² + eps, ρ⁻² − eps], evenly spread over
/// the candidates.
std::vector<StraightnessSample> delta_straightness_stat(const LevelDecomposition& d, int k_lo, int k_hi,
                                                        double delta, const ModelParams& params,
                                                        double eps = 0.05, std::size_t max_points = 50);

/// Unbiased standard deviation; 0 for fewer than two values.
double sample_sd(std::span<const double> v);

}  // namespace lpplab
