// AArch64 only; Advanced SIMD is baseline there.
#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace lpplab::simd::detail {

namespace {

void rotate_neon(const double* xt, double* zs, std::size_t n) {
    const float64x2_t c = vdupq_n_f64(kInvSqrt2);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2x2_t v = vld2q_f64(xt + 2 * i);  // val[0] = x, val[1] = t
        float64x2x2_t r;
        r.val[0] = vmulq_f64(vsubq_f64(v.val[0], v.val[1]), c);
        r.val[1] = vmulq_f64(vaddq_f64(v.val[0], v.val[1]), c);
        vst2q_f64(zs + 2 * i, r);
    }
    for (; i < n; ++i) {
        double x = xt[2 * i], t = xt[2 * i + 1];
        zs[2 * i] = (x - t) * kInvSqrt2;
        zs[2 * i + 1] = (x + t) * kInvSqrt2;
    }
}

void unrotate_neon(const double* zs, double* xt, std::size_t n) {
    const float64x2_t c = vdupq_n_f64(kInvSqrt2);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2x2_t v = vld2q_f64(zs + 2 * i);  // val[0] = z, val[1] = s
        float64x2x2_t r;
        r.val[0] = vmulq_f64(vaddq_f64(v.val[1], v.val[0]), c);
        r.val[1] = vmulq_f64(vsubq_f64(v.val[1], v.val[0]), c);
        vst2q_f64(xt + 2 * i, r);
    }
    for (; i < n; ++i) {
        double z = zs[2 * i], s = zs[2 * i + 1];
        xt[2 * i] = (s + z) * kInvSqrt2;
        xt[2 * i + 1] = (s - z) * kInvSqrt2;
    }
}

void shape_alpha_neon(const double* xt, double* out, std::size_t n) {
    const float64x2_t two = vdupq_n_f64(2.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2x2_t v = vld2q_f64(xt + 2 * i);
        vst1q_f64(out + i, vmulq_f64(two, vsqrtq_f64(vmulq_f64(v.val[0], v.val[1]))));
    }
    for (; i < n; ++i) out[i] = 2.0 * __builtin_sqrt(xt[2 * i] * xt[2 * i + 1]);
}

void z_cdf_neon(const double* r, double* out, std::size_t n, double lambda, double rho) {
    const double inv_rho_s = 1.0 / rho;
    const float64x2_t inv_rho = vdupq_n_f64(inv_rho_s);
    const float64x2_t lower = vdupq_n_f64(rho * rho);
    const float64x2_t upper = vdupq_n_f64(1.0 / (lambda * lambda));
    const float64x2_t denom = vdupq_n_f64(inv_rho_s - lambda);
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t zero = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(r + i);
        float64x2_t mid = vdivq_f64(vsubq_f64(inv_rho, vsqrtq_f64(vdivq_f64(one, v))), denom);
        float64x2_t res = vbslq_f64(vcgtq_f64(v, upper), one, mid);
        res = vbslq_f64(vcleq_f64(v, lower), zero, res);
        vst1q_f64(out + i, res);
    }
    for (; i < n; ++i) out[i] = z_cdf_one(r[i], lambda, rho);
}

double sum_neon(const double* v, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vaddq_f64(acc0, vld1q_f64(v + i));
        acc1 = vaddq_f64(acc1, vld1q_f64(v + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += v[i];
    return acc;
}

double sum_sq_dev_neon(const double* v, std::size_t n, double mean) {
    const float64x2_t m = vdupq_n_f64(mean);
    float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        float64x2_t d0 = vsubq_f64(vld1q_f64(v + i), m);
        float64x2_t d1 = vsubq_f64(vld1q_f64(v + i + 2), m);
        acc0 = vaddq_f64(acc0, vmulq_f64(d0, d0));
        acc1 = vaddq_f64(acc1, vmulq_f64(d1, d1));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) {
        double d = v[i] - mean;
        acc += d * d;
    }
    return acc;
}

double ks_sup_neon(const double* f, std::size_t n) {
    const double dn_s = static_cast<double>(n);
    const float64x2_t dn = vdupq_n_f64(dn_s);
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t step = vdupq_n_f64(2.0);
    const double init[2] = {0.0, 1.0};
    float64x2_t idx = vld1q_f64(init);
    float64x2_t best = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t fv = vld1q_f64(f + i);
        float64x2_t lo = vdivq_f64(idx, dn);
        float64x2_t hi = vdivq_f64(vaddq_f64(idx, one), dn);
        best = vmaxq_f64(best, vmaxq_f64(vsubq_f64(fv, lo), vsubq_f64(hi, fv)));
        idx = vaddq_f64(idx, step);
    }
    double b = vmaxvq_f64(best);
    for (; i < n; ++i) {
        double lo = static_cast<double>(i) / dn_s;
        double hi = static_cast<double>(i + 1) / dn_s;
        double d1 = f[i] - lo, d2 = hi - f[i];
        double d = d1 > d2 ? d1 : d2;
        if (d > b) b = d;
    }
    return b;
}

}  // namespace

const KernelTable kNeonTable{Isa::neon,  rotate_neon, unrotate_neon,   shape_alpha_neon,
                             z_cdf_neon, sum_neon,    sum_sq_dev_neon, ks_sup_neon};

}  // namespace lpplab::simd::detail
