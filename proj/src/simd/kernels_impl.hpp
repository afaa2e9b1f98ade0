#pragma once

#include "lpplab/simd/kernels.hpp"

namespace lpplab::simd::detail {

extern const KernelTable kScalarTable;
#if defined(LPPLAB_HAVE_AVX2_TU)
extern const KernelTable kAvx2Table;
#endif
#if defined(LPPLAB_HAVE_NEON_TU)
extern const KernelTable kNeonTable;
#endif

// Scalar element kernel shared by the vector tails. Internal linkage keeps
// each translation unit on its own instruction set.
static inline double z_cdf_one(double r, double lambda, double rho) {
    double inv_rho = 1.0 / rho;
    double upper = 1.0 / (lambda * lambda);
    if (r <= rho * rho) return 0.0;
    if (r > upper) return 1.0;
    return (inv_rho - __builtin_sqrt(1.0 / r)) / (inv_rho - lambda);
}

}  // namespace lpplab::simd::detail
