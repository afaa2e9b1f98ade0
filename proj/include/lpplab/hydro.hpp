#pragma once

#include <utility>

namespace lpplab {

struct ModelParams {
    double lambda = 0.0;
    double rho = 0.0;
};

enum class Regime { stationary, rarefaction, shock };

/// λρ = 1 is matched to within 1e-12.
Regime regime(const ModelParams& p);

/// α(x, t) = 2√(xt).
double shape_alpha(double x, double t);

/// v(u) = √(2 + u²) and its derivative.
double growth_velocity(double u);
double growth_velocity_derivative(double u);

/// f(c) = √(2(1 − c²)), the λ = ρ = 0 limit shape in the (z, s) picture.
double limit_shape_f(double c);

/// Entropic solution of the Burgers equation with flux g(u) = 1/u. In the
/// stationary regime the solution is the constant λ.
double burgers_u(double x, double t, const ModelParams& p);

/// Range [ρ², λ⁻²] of characteristic speeds x/t of the rarefaction fan
/// (λ = 0 gives +inf).
std::pair<double, double> fan_speeds(const ModelParams& p);

/// x(a, t) = a + t λ⁻²; stationary regime only.
double characteristic(double a, double t, const ModelParams& p);

/// Limit CDF of X_t / t for the second-class particle.
double z_cdf(double r, const ModelParams& p);

/// (1 − λ²)/(1 + λ²); stationary regime only.
double stationary_interface_slope(const ModelParams& p);

/// Macroscopic stationary height s·v(u) + z·u with u = (ρ − λ)/√2.
double stationary_height(double z, double s, const ModelParams& p);

}  // namespace lpplab
