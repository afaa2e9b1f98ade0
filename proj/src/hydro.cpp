#include "lpplab/hydro.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lpplab/error.hpp"
#include "lpplab/simd/kernels.hpp"

namespace lpplab {

namespace {

void check_params(const ModelParams& p) {
    require(p.lambda >= 0.0 && p.rho >= 0.0 && std::isfinite(p.lambda) && std::isfinite(p.rho),
            "intensities must be finite and >= 0");
}

}  // namespace

Regime regime(const ModelParams& p) {
    check_params(p);
    double prod = p.lambda * p.rho;
    if (std::abs(prod - 1.0) <= 1e-12) return Regime::stationary;
    return prod < 1.0 ? Regime::rarefaction : Regime::shock;
}

double shape_alpha(double x, double t) {
    require(x >= 0.0 && t >= 0.0, "shape_alpha: coordinates must be >= 0");
    return 2.0 * std::sqrt(x * t);
}

double growth_velocity(double u) { return std::sqrt(2.0 + u * u); }

double growth_velocity_derivative(double u) { return u / std::sqrt(2.0 + u * u); }

double limit_shape_f(double c) {
    require(std::abs(c) <= 1.0, "limit_shape_f: |c| must be <= 1");
    return std::sqrt(2.0 * (1.0 - c * c));
}

double burgers_u(double x, double t, const ModelParams& p) {
    require(x > 0.0 && t > 0.0, "burgers_u: need x > 0 and t > 0");
    Regime r = regime(p);
    require(r != Regime::shock, "burgers_u: shock regime (λρ > 1) is not covered");
    if (r == Regime::stationary) return p.lambda;
    if (t >= x / (p.rho * p.rho)) return 1.0 / p.rho;
    if (t >= p.lambda * p.lambda * x) return std::sqrt(t / x);
    return p.lambda;
}

std::pair<double, double> fan_speeds(const ModelParams& p) {
    check_params(p);
    double hi = p.lambda > 0.0 ? 1.0 / (p.lambda * p.lambda) : std::numeric_limits<double>::infinity();
    return {p.rho * p.rho, hi};
}

double characteristic(double a, double t, const ModelParams& p) {
    require(regime(p) == Regime::stationary, "characteristic: stationary regime (λρ = 1) only");
    require(a >= 0.0, "characteristic: a must be >= 0");
    return a + t / (p.lambda * p.lambda);
}

double z_cdf(double r, const ModelParams& p) {
    require(p.rho > 0.0, "z_cdf: rho must be > 0");
    require(regime(p) == Regime::rarefaction, "z_cdf: need λρ < 1");
    double out = 0.0;
    simd::scalar_table().z_cdf(&r, &out, 1, p.lambda, p.rho);
    return out;
}

double stationary_interface_slope(const ModelParams& p) {
    require(regime(p) == Regime::stationary, "stationary_interface_slope: need λρ = 1");
    double l2 = p.lambda * p.lambda;
    return (1.0 - l2) / (1.0 + l2);
}

double stationary_height(double z, double s, const ModelParams& p) {
    require(regime(p) == Regime::stationary, "stationary_height: need λρ = 1");
    double u = (p.rho - p.lambda) / std::numbers::sqrt2;
    return s * growth_velocity(u) + z * u;
}

}  // namespace lpplab
