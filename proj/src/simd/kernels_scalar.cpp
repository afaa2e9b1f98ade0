#include <cmath>

#include "kernels_impl.hpp"

namespace lpplab::simd::detail {

namespace {

void rotate_scalar(const double* xt, double* zs, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double x = xt[2 * i], t = xt[2 * i + 1];
        zs[2 * i] = (x - t) * kInvSqrt2;
        zs[2 * i + 1] = (x + t) * kInvSqrt2;
    }
}

void unrotate_scalar(const double* zs, double* xt, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double z = zs[2 * i], s = zs[2 * i + 1];
        xt[2 * i] = (s + z) * kInvSqrt2;
        xt[2 * i + 1] = (s - z) * kInvSqrt2;
    }
}

void shape_alpha_scalar(const double* xt, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 2.0 * std::sqrt(xt[2 * i] * xt[2 * i + 1]);
}

void z_cdf_scalar(const double* r, double* out, std::size_t n, double lambda, double rho) {
    for (std::size_t i = 0; i < n; ++i) out[i] = z_cdf_one(r[i], lambda, rho);
}

double sum_scalar(const double* v, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += v[i];
    return acc;
}

double sum_sq_dev_scalar(const double* v, std::size_t n, double mean) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = v[i] - mean;
        acc += d * d;
    }
    return acc;
}

double ks_sup_scalar(const double* f, std::size_t n) {
    double best = 0.0;
    double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double lo = static_cast<double>(i) / dn;
        double hi = static_cast<double>(i + 1) / dn;
        best = std::fmax(best, std::fmax(f[i] - lo, hi - f[i]));
    }
    return best;
}

}  // namespace

const KernelTable kScalarTable{Isa::scalar,   rotate_scalar,     unrotate_scalar,
                               shape_alpha_scalar, z_cdf_scalar, sum_scalar,
                               sum_sq_dev_scalar,  ks_sup_scalar};

}  // namespace lpplab::simd::detail
