#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"
#include "lpplab/error.hpp"

namespace lpplab::simd {

namespace {

bool forced_scalar() {
    const char* env = std::getenv("LPPLAB_SIMD");
    return env != nullptr && std::string(env) == "scalar";
}

#if defined(LPPLAB_HAVE_AVX2_TU)
bool cpu_has_avx2() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
}
#endif

const KernelTable& pick() {
    if (forced_scalar()) return detail::kScalarTable;
#if defined(LPPLAB_HAVE_AVX2_TU)
    if (cpu_has_avx2()) return detail::kAvx2Table;
#endif
#if defined(LPPLAB_HAVE_NEON_TU)
    return detail::kNeonTable;
#endif
    return detail::kScalarTable;
}

}  // namespace

std::string_view to_string(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

const KernelTable& active() {
    static const KernelTable& table = pick();
    return table;
}

const KernelTable& scalar_table() { return detail::kScalarTable; }

std::vector<const KernelTable*> available() {
    std::vector<const KernelTable*> out{&detail::kScalarTable};
#if defined(LPPLAB_HAVE_AVX2_TU)
    if (cpu_has_avx2()) out.push_back(&detail::kAvx2Table);
#endif
#if defined(LPPLAB_HAVE_NEON_TU)
    out.push_back(&detail::kNeonTable);
#endif
    return out;
}

void rotate(std::span<const PlanarPoint> in, std::span<RotatedPoint> out) {
    require(in.size() == out.size(), "rotate: size mismatch");
    static_assert(sizeof(PlanarPoint) == 2 * sizeof(double));
    static_assert(sizeof(RotatedPoint) == 2 * sizeof(double));
    active().rotate(reinterpret_cast<const double*>(in.data()),
                    reinterpret_cast<double*>(out.data()), in.size());
}

void unrotate(std::span<const RotatedPoint> in, std::span<PlanarPoint> out) {
    require(in.size() == out.size(), "unrotate: size mismatch");
    active().unrotate(reinterpret_cast<const double*>(in.data()),
                      reinterpret_cast<double*>(out.data()), in.size());
}

void shape_alpha(std::span<const PlanarPoint> in, std::span<double> out) {
    require(in.size() == out.size(), "shape_alpha: size mismatch");
    active().shape_alpha(reinterpret_cast<const double*>(in.data()), out.data(), in.size());
}

void z_cdf(std::span<const double> r, std::span<double> out, double lambda, double rho) {
    require(r.size() == out.size(), "z_cdf: size mismatch");
    require(rho > 0.0, "z_cdf: rho must be > 0");
    active().z_cdf(r.data(), out.data(), r.size(), lambda, rho);
}

double mean(std::span<const double> v) {
    if (v.empty()) return 0.0;
    return active().sum(v.data(), v.size()) / static_cast<double>(v.size());
}

double variance(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    double m = mean(v);
    return active().sum_sq_dev(v.data(), v.size(), m) / static_cast<double>(v.size() - 1);
}

}  // namespace lpplab::simd
