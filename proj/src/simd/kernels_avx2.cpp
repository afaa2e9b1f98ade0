// Built with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace lpplab::simd::detail {

namespace {

void rotate_avx2(const double* xt, double* zs, std::size_t n) {
    const __m256d c = _mm256_set1_pd(kInvSqrt2);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(xt + 2 * i);    // x0 t0 x1 t1
        __m256d sw = _mm256_permute_pd(v, 0b0101);  // t0 x0 t1 x1
        __m256d diff = _mm256_sub_pd(v, sw);        // x-t in even lanes
        __m256d sum = _mm256_add_pd(v, sw);         // x+t in odd lanes
        __m256d r = _mm256_blend_pd(diff, sum, 0b1010);
        _mm256_storeu_pd(zs + 2 * i, _mm256_mul_pd(r, c));
    }
    for (; i < n; ++i) {
        double x = xt[2 * i], t = xt[2 * i + 1];
        zs[2 * i] = (x - t) * kInvSqrt2;
        zs[2 * i + 1] = (x + t) * kInvSqrt2;
    }
}

void unrotate_avx2(const double* zs, double* xt, std::size_t n) {
    const __m256d c = _mm256_set1_pd(kInvSqrt2);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(zs + 2 * i);    // z0 s0 z1 s1
        __m256d sw = _mm256_permute_pd(v, 0b0101);  // s0 z0 s1 z1
        __m256d sum = _mm256_add_pd(sw, v);         // s+z in even lanes
        __m256d diff = _mm256_sub_pd(v, sw);        // s-z in odd lanes
        __m256d r = _mm256_blend_pd(sum, diff, 0b1010);
        _mm256_storeu_pd(xt + 2 * i, _mm256_mul_pd(r, c));
    }
    for (; i < n; ++i) {
        double z = zs[2 * i], s = zs[2 * i + 1];
        xt[2 * i] = (s + z) * kInvSqrt2;
        xt[2 * i + 1] = (s - z) * kInvSqrt2;
    }
}

void shape_alpha_avx2(const double* xt, double* out, std::size_t n) {
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(xt + 2 * i);      // x0 t0 x1 t1
        __m256d b = _mm256_loadu_pd(xt + 2 * i + 4);  // x2 t2 x3 t3
        __m256d xs = _mm256_unpacklo_pd(a, b);        // x0 x2 x1 x3
        __m256d ts = _mm256_unpackhi_pd(a, b);        // t0 t2 t1 t3
        __m256d r = _mm256_mul_pd(two, _mm256_sqrt_pd(_mm256_mul_pd(xs, ts)));
        r = _mm256_permute4x64_pd(r, 0b11011000);  // back to 0 1 2 3
        _mm256_storeu_pd(out + i, r);
    }
    for (; i < n; ++i) out[i] = 2.0 * __builtin_sqrt(xt[2 * i] * xt[2 * i + 1]);
}

void z_cdf_avx2(const double* r, double* out, std::size_t n, double lambda, double rho) {
    const double inv_rho_s = 1.0 / rho;
    const double upper_s = 1.0 / (lambda * lambda);
    const __m256d inv_rho = _mm256_set1_pd(inv_rho_s);
    const __m256d lower = _mm256_set1_pd(rho * rho);
    const __m256d upper = _mm256_set1_pd(upper_s);
    const __m256d denom = _mm256_set1_pd(inv_rho_s - lambda);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(r + i);
        __m256d mid = _mm256_div_pd(_mm256_sub_pd(inv_rho, _mm256_sqrt_pd(_mm256_div_pd(one, v))),
                                    denom);
        __m256d is_low = _mm256_cmp_pd(v, lower, _CMP_LE_OQ);
        __m256d is_high = _mm256_cmp_pd(v, upper, _CMP_GT_OQ);
        __m256d res = _mm256_blendv_pd(mid, one, is_high);
        res = _mm256_blendv_pd(res, zero, is_low);
        _mm256_storeu_pd(out + i, res);
    }
    for (; i < n; ++i) out[i] = z_cdf_one(r[i], lambda, rho);
}

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double sum_avx2(const double* v, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(v + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(v + i + 4));
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += v[i];
    return acc;
}

double sum_sq_dev_avx2(const double* v, std::size_t n, double mean) {
    const __m256d m = _mm256_set1_pd(mean);
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(v + i), m);
        __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(v + i + 4), m);
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        double d = v[i] - mean;
        acc += d * d;
    }
    return acc;
}

double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_max_sd(lo, sh));
}

double ks_sup_avx2(const double* f, std::size_t n) {
    const double dn_s = static_cast<double>(n);
    const __m256d dn = _mm256_set1_pd(dn_s);
    const __m256d step = _mm256_set1_pd(4.0);
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    __m256d best = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d fv = _mm256_loadu_pd(f + i);
        __m256d lo = _mm256_div_pd(idx, dn);
        __m256d hi = _mm256_div_pd(_mm256_add_pd(idx, one), dn);
        best = _mm256_max_pd(best, _mm256_max_pd(_mm256_sub_pd(fv, lo), _mm256_sub_pd(hi, fv)));
        idx = _mm256_add_pd(idx, step);
    }
    double b = hmax(best);
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

const KernelTable kAvx2Table{Isa::avx2,       rotate_avx2, unrotate_avx2,   shape_alpha_avx2,
                             z_cdf_avx2,      sum_avx2,    sum_sq_dev_avx2, ks_sup_avx2};

}  // namespace lpplab::simd::detail
