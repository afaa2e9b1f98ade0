#include "lpplab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpplab/error.hpp"
#include "lpplab/simd/kernels.hpp"

namespace lpplab {

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    require(!samples.empty(), "ks_distance: no samples");
    std::sort(samples.begin(), samples.end());
    std::vector<double> f(samples.size());
    std::transform(samples.begin(), samples.end(), f.begin(), cdf);
    return simd::active().ks_sup(f.data(), f.size());
}

ExponentFit fit_exponent(std::span<const double> scales, std::span<const double> dispersions) {
    require(scales.size() == dispersions.size(), "fit_exponent: size mismatch");
    require(scales.size() >= 3, "fit_exponent: need at least three scales");
    std::size_t n = scales.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        require(scales[i] > 0.0 && dispersions[i] > 0.0, "fit_exponent: entries must be > 0");
        lx[i] = std::log(scales[i]);
        ly[i] = std::log(dispersions[i]);
    }
    double mx = simd::mean(lx), my = simd::mean(ly);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    require(sxx > 0.0, "fit_exponent: scales must not all be equal");
    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = ly[i] - fit.intercept - fit.slope * lx[i];
        ssr += r * r;
    }
    fit.std_error = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
    return fit;
}

std::vector<double> box_counts(const std::vector<PlanarPoint>& field, const BoxGrid& grid) {
    require(grid.nx >= 1 && grid.nt >= 1 && grid.side > 0.0, "box_counts: bad grid");
    auto nx = static_cast<std::size_t>(grid.nx), nt = static_cast<std::size_t>(grid.nt);
    std::vector<double> c(nx * nt, 0.0);
    for (const auto& p : field) {
        double fx = (p.x - grid.x0) / grid.side;
        double ft = (p.t - grid.t0) / grid.side;
        if (fx < 0.0 || ft < 0.0) continue;
        auto ix = static_cast<std::size_t>(fx), it = static_cast<std::size_t>(ft);
        if (ix >= nx || it >= nt) continue;
        c[it * nx + ix] += 1.0;
    }
    return c;
}

PoissonFit poisson_fit(const std::vector<double>& counts, double box_area) {
    require(counts.size() >= 2, "poisson_fit: dispersion needs at least two boxes");
    require(box_area > 0.0, "poisson_fit: box area must be > 0");
    PoissonFit fit;
    fit.boxes = counts.size();
    double m = simd::mean(counts);
    fit.intensity = m / box_area;
    fit.dispersion_index = m > 0.0 ? simd::variance(counts) / m : std::numeric_limits<double>::quiet_NaN();
    return fit;
}

PoissonFit beta_poisson_test(const std::vector<std::vector<PlanarPoint>>& fields, const BoxGrid& grid,
                             const ModelParams& params) {
    require(regime(params) == Regime::stationary, "beta_poisson_test: need λρ = 1");
    require(grid.nx * grid.nt >= 2, "beta_poisson_test: dispersion needs at least two boxes");
    require(!fields.empty(), "beta_poisson_test: empty ensemble");
    std::vector<double> counts;
    for (const auto& field : fields) {
        auto c = box_counts(field, grid);
        counts.insert(counts.end(), c.begin(), c.end());
    }
    return poisson_fit(counts, grid.side * grid.side);
}

std::vector<PlanarPoint> all_beta_points(const LevelDecomposition& d) {
    std::vector<PlanarPoint> out;
    for (int k = 1; k <= d.max_complete_level; ++k)
        for (const auto& b : beta_points(d, k)) out.push_back(b.location);
    return out;
}

std::vector<StraightnessSample> delta_straightness_stat(const LevelDecomposition& d, int k_lo, int k_hi,
                                                        double delta, const ModelParams& params,
                                                        double eps, std::size_t max_points) {
    require(delta > 0.0 && delta < 1.0 / 3.0, "delta_straightness_stat: need 0 < delta < 1/3");
    require(k_lo >= 1 && k_lo <= k_hi, "delta_straightness_stat: bad level range");
    auto [lo_speed, hi_speed] = fan_speeds(params);  // x/t range
    double lo_slope = 1.0 / hi_speed + eps;          // t/x >= λ² + eps
    double hi_slope = lo_speed > 0.0 ? 1.0 / lo_speed - eps : std::numeric_limits<double>::infinity();

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < d.points.size(); ++i) {
        const auto& c = d.points[i];
        if (d.level[i] < k_lo || d.level[i] > k_hi || c.kind != PointKind::bulk) continue;
        double slope = c.p.t / c.p.x;
        if (slope >= lo_slope && slope <= hi_slope) candidates.push_back(i);
    }
    std::vector<StraightnessSample> out;
    if (candidates.empty() || max_points == 0) return out;
    std::size_t take = std::min(max_points, candidates.size());
    for (std::size_t j = 0; j < take; ++j) {
        const auto& c = d.points[candidates[j * candidates.size() / take]];
        StraightnessSample s;
        s.p = c.p;
        s.norm = std::hypot(c.p.x, c.p.t);
        s.envelope = std::pow(s.norm, -delta);
        auto rout = r_out(d, c.p);
        s.r_out_size = rout.size();
        for (const auto& q : rout) s.max_angle = std::max(s.max_angle, ang(c.p, q));
        out.push_back(s);
    }
    return out;
}

double sample_sd(std::span<const double> v) { return std::sqrt(simd::variance(v)); }

}  // namespace lpplab
