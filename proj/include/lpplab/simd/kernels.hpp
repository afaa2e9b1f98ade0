#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lpplab/geometry.hpp"

namespace lpplab::simd {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);

// Data-parallel kernels. Every vector variant must agree bit-for-bit with the
// scalar reference, except the reductions `sum` / `sum_sq_dev` whose
// summation order differs (agreement to rounding).
struct KernelTable {
    Isa isa;
    // Interleaved (x, t) -> interleaved (z, s), n points.
    void (*rotate)(const double* xt, double* zs, std::size_t n);
    // Interleaved (z, s) -> interleaved (x, t), n points; no cone check.
    void (*unrotate)(const double* zs, double* xt, std::size_t n);
    // out[i] = 2 sqrt(x_i t_i) over interleaved (x, t).
    void (*shape_alpha)(const double* xt, double* out, std::size_t n);
    // Limit CDF of the second-class particle speed, elementwise.
    void (*z_cdf)(const double* r, double* out, std::size_t n, double lambda, double rho);
    double (*sum)(const double* v, std::size_t n);
    double (*sum_sq_dev)(const double* v, std::size_t n, double mean);
    // max_i max(F_i - i/n, (i+1)/n - F_i) for cdf values of sorted samples.
    double (*ks_sup)(const double* cdf_sorted, std::size_t n);
};

/// The table chosen for this CPU (LPPLAB_SIMD=scalar forces the reference).
const KernelTable& active();
const KernelTable& scalar_table();
/// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available();

// Convenience wrappers over the active table.
void rotate(std::span<const PlanarPoint> in, std::span<RotatedPoint> out);
void unrotate(std::span<const RotatedPoint> in, std::span<PlanarPoint> out);
void shape_alpha(std::span<const PlanarPoint> in, std::span<double> out);
void z_cdf(std::span<const double> r, std::span<double> out, double lambda, double rho);
double mean(std::span<const double> v);
/// Unbiased sample variance (n - 1 denominator); 0 for n < 2.
double variance(std::span<const double> v);

}  // namespace lpplab::simd
