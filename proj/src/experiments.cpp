#include "lpplab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lpplab/error.hpp"
#include "lpplab/hammersley.hpp"
#include "lpplab/hydro.hpp"
#include "lpplab/lpp.hpp"
#include "lpplab/png.hpp"
#include "lpplab/rng.hpp"
#include "lpplab/simd/kernels.hpp"
#include "lpplab/stats.hpp"

namespace lpplab {

namespace {

// Acceptance tolerances.
constexpr double kKsMax = 0.06;
constexpr double kLlnTol = 0.10;
constexpr double kShapeLo = 0.90;
constexpr double kShapeHi = 1.00;
constexpr double kChiLo = 0.23;
constexpr double kChiHi = 0.43;
constexpr double kXiLo = 0.50;
constexpr double kXiHi = 0.80;
constexpr double kIntensityTol = 0.10;
constexpr double kDispersionLo = 0.85;
constexpr double kDispersionHi = 1.15;
constexpr double kAngleSlack = 0.05;
constexpr int kPathsPerReplica = 20;
constexpr double kBinWidth = 0.2;
constexpr double kBurgersL1Max = 0.10;
constexpr double kTailScale = 6.0;
constexpr double kTailFraction = 0.02;
constexpr double kInterfaceTol = 0.10;
constexpr double kInterfaceBandFraction = 0.95;
constexpr double kBetaBox = 10.0;

// Salt separating the PNG configuration from the Hammersley one.
constexpr std::uint64_t kPngSalt = 0x504e47;

ModelParams params(const ExperimentSpec& s) { return {s.lambda, s.rho}; }

std::vector<double> scalars(const std::vector<const ReplicaResult*>& used, const std::string& key) {
    std::vector<double> v;
    v.reserve(used.size());
    for (const auto* r : used) v.push_back(r->scalars.at(key));
    return v;
}

std::vector<double> column(const std::vector<const ReplicaResult*>& used, const std::string& key,
                           std::size_t j) {
    std::vector<double> v;
    v.reserve(used.size());
    for (const auto* r : used) v.push_back(r->series.at(key).at(j));
    return v;
}

void verdict(Summary& s, std::string name, double value, double lo, double hi, std::size_t n) {
    bool pass = std::isfinite(value) && value >= lo && value <= hi;
    s.verdicts.push_back({std::move(name), value, lo, hi, n, pass});
}

std::vector<double> scales_of(double horizon, std::initializer_list<double> fractions) {
    std::vector<double> out;
    for (double f : fractions) out.push_back(f * horizon);
    return out;
}

double fraction_within(const std::vector<double>& v, double lo, double hi) {
    if (v.empty()) return 0.0;
    auto k = std::count_if(v.begin(), v.end(), [&](double x) { return x >= lo && x <= hi; });
    return static_cast<double>(k) / static_cast<double>(v.size());
}

void need_horizon(const ExperimentSpec& s) {
    require(std::isfinite(s.horizon) && s.horizon > 0.0, "horizon must be > 0");
}

void need_stationary(const ExperimentSpec& s) {
    need_horizon(s);
    require(s.lambda > 0.0 && regime(params(s)) == Regime::stationary, "experiment needs λρ = 1");
}

void need_rarefaction(const ExperimentSpec& s) {
    need_horizon(s);
    require(s.rho > 0.0, "experiment needs ρ > 0");
    require(regime(params(s)) == Regime::rarefaction, "experiment needs λρ < 1");
}

void need_no_shock(const ExperimentSpec& s) {
    need_horizon(s);
    require(regime(params(s)) != Regime::shock, "experiment needs λρ <= 1");
}

void need_zero_boundary(const ExperimentSpec& s) {
    need_horizon(s);
    require(s.lambda == 0.0 && s.rho == 0.0, "experiment needs λ = ρ = 0");
}

TwoTypeRun png_run(const ExperimentSpec& s, std::uint64_t seed) {
    std::uint64_t png_seed = mix64(seed ^ kPngSalt);
    auto cfg = sample_config(s.lambda, s.rho, png_window(s.horizon), png_seed);
    return evolve_two_type(nucleations_from(cfg), s.horizon, png_seed);
}

// --- cdf_scp -------------------------------------------------------------

void cdf_scp_replica(const ExperimentSpec& s, std::uint64_t seed, ReplicaResult& out) {
    auto cfg = sample_config(s.lambda, s.rho, scp_window(s.lambda, s.horizon), seed);
    auto scp = second_class(cfg);
    out.scalars["x_over_t"] = scp.position_at(s.horizon) / s.horizon;
}

void cdf_scp_eval(const ExperimentSpec& s, const std::vector<const ReplicaResult*>& used, Summary& out) {
    auto v = scalars(used, "x_over_t");
    auto p = params(s);
    double ks = ks_distance(v, [&](double r) { return z_cdf(r, p); });
    out.estimates["ks"] = ks;
    out.estimates["mean_x_over_t"] = simd::mean(v);
    out.reference["fan_lo"] = fan_speeds(p).first;
    if (s.lambda > 0.0) out.reference["fan_hi"] = fan_speeds(p).second;
    verdict(out, "ks_distance", ks, 0.0, kKsMax, v.size());
}

// --- lln_stationary ------------------------------------------------------

void lln_replica(const ExperimentSpec& s, std::uint64_t seed, ReplicaResult& out) {
    double T = s.horizon, m = 4.0 * std::cbrt(T * T);
    Window w{1.25 * T / (s.lambda * s.lambda) + m, 1.25 * T + m};
    auto cfg = sample_config(s.lambda, s.rho, w, seed);
    out.scalars["scp_over_t"] = second_class(cfg).position_at(T) / T;
    out.scalars["dual_over_t"] = dual_second_class(cfg).position_at(T) / T;
    auto run = png_run(s, seed);
    out.scalars["phi_over_t"] = run.trace.phi_at(T) / T;
    out.scalars["violations"] = run.trace.monotonicity_violations;
}

void lln_eval(const ExperimentSpec& s, const std::vector<const ReplicaResult*>& used, Summary& out) {
    auto p = params(s);
    double speed = 1.0 / (s.lambda * s.lambda);
    double slope = stationary_interface_slope(p);
    auto n = used.size();
    double scp = simd::mean(scalars(used, "scp_over_t"));
    double dual = simd::mean(scalars(used, "dual_over_t"));
    double phi = simd::mean(scalars(used, "phi_over_t"));
    auto viol = scalars(used, "violations");
    double total_viol = 0.0;
    for (double x : viol) total_viol += x;
    out.estimates["scp_speed"] = scp;
    out.estimates["dual_speed"] = dual;
    out.estimates["interface_slope"] = phi;
    out.reference["scp_speed"] = speed;
    out.reference["interface_slope"] = slope;
    verdict(out, "scp_speed", scp, speed - kLlnTol, speed + kLlnTol, n);
    verdict(out, "dual_speed", dual, speed - kLlnTol, speed + kLlnTol, n);
    verdict(out, "interface_slope", phi, slope - kLlnTol, slope + kLlnTol, n);
    verdict(out, "monotonicity_violations", total_viol, 0.0, 0.0, n);
}

// --- interface_slope -----------------------------------------------------

void interface_replica(const ExperimentSpec& s, std::uint64_t seed, ReplicaResult& out) {
    auto run = png_run(s, seed);
    out.scalars["phi_over_t"] = run.trace.phi_at(s.horizon) / s.horizon;
    out.scalars["violations"] = run.trace.monotonicity_violations;
}

void interface_eval(const ExperimentSpec& s, const std::vector<const ReplicaResult*>& used, Summary& out) {
    auto p = params(s);
    auto v = scalars(used, "phi_over_t");
    auto n = v.size();
    double viol = 0.0;
    for (double x : scalars(used, "violations")) viol += x;
    out.estimates["mean_slope"] = simd::mean(v);
    if (regime(p) == Regime::stationary) {
        double w = stationary_interface_slope(p);
        out.reference["slope"] = w;
        verdict(out, "mean_slope", simd::mean(v), w - kInterfaceTol, w + kInterfaceTol, n);
    } else {
        double lo = (s.rho * s.rho - 1.0) / (s.rho * s.rho + 1.0);
        double hi = (1.0 - s.lambda * s.lambda) / (1.0 + s.lambda * s.lambda);
        out.reference["band_lo"] = lo;
        out.reference["band_hi"] = hi;
        double f = fraction_within(v, lo - kInterfaceTol, hi + kInterfaceTol);
        out.estimates["fraction_in_band"] = f;
        verdict(out, "fraction_in_band", f, kInterfaceBandFraction, 1.0, n);
    }
    verdict(out, "monotonicity_violations", viol, 0.0, 0.0, n);
}

// --- shape_check ---------------------------------------------------------

void shape_replica(const ExperimentSpec& s, std::uint64_t seed, ReplicaResult& out) {
    double T = s.horizon;
    auto d = level_decomposition(sample_config(0.0, 0.0, {2.0 * T, 2.0 * T}, seed));
    out.scalars["ratio_t"] = last_passage_from_origin(d, {T, T}) / (2.0 * T);
    out.scalars["ratio_2t"] = last_passage_from_origin(d, {2.0 * T, 2.0 * T}) / (4.0 * T);
}

void shape_eval(const ExperimentSpec&, const std::vector<const ReplicaResult*>& used, Summary& out) {
    auto n = used.size();
    double r1 = simd::mean(scalars(used, "ratio_t"));
    double r2 = simd::mean(scalars(used, "ratio_2t"));
    out.estimates["ratio_t"] = r1;
    out.estimates["ratio_2t"] = r2;
    out.reference["ratio_limit"] = 1.0;
    verdict(out, "ratio_t", r1, kShapeLo, kShapeHi, n);
    // Convergence from below: the ratio must increase with the scale.
    verdict(out, "ratio_increase", r2 - r1, std::numeric_limits<double>::min(), 1.0, n);
}

// --- fluct_chi -----------------------------------------------------------

void chi_replica(const ExperimentSpec& s, std::uint64_t seed, ReplicaResult& out) {
    double T = s.horizon;
    auto d = level_decomposition(sample_config(0.0, 0.0, {T, T}, seed));
    auto& L = out.series["L"];
    for (double r : scales_of(T, {0.125, 0.25, 0.5, 1.0}))
        L.push_back(last_passage_from_origin(d, {r, r}));
}

void chi_eval(const ExperimentSpec& s, const std::vector<const ReplicaResult*>& used, Summary& out) {
    auto scales = scales_of(s.horizon, {0.125, 0.25, 0.5, 1.0});
    std::vector<double> sd;
    for (std::size_t j = 0; j < scales.size(); ++j) {
        sd.push_back(sample_sd(column(used, "L", j)));
        out.estimates["sd_" + std::to_string(j)] = sd.back();
    }
    auto fit = fit_exponent(scales, sd);
    out.estimates["chi"] = fit.slope;
    out.estimates["chi_std_error"] = fit.std_error;
    out.reference["chi"] = 1.0 / 3.0;
    verdict(out, "chi", fit.slope, kChiLo, kChiHi, used.size());
}

// --- fluct_xi ------------------------------------------------------------

void xi_replica(const ExperimentSpec& s, std::uint64_t seed, ReplicaResult& out) {
    double T = s.horizon;
    double speed = 1.0 / (s.lambda * s.lambda);
    auto scp = second_class(sample_config(s.lambda, s.rho, scp_window(s.lambda, T), seed));
    auto& X = out.series["X"];
    for (double r : scales_of(T, {0.125, 0.25, 0.5, 1.0})) X.push_back(scp.position_at(r) - speed * r);
    auto run = png_run(s, seed);
    auto& phi = out.series["phi"];
    for (double r : scales_of(T, {0.0625, 0.125, 0.25, 0.5, 1.0})) phi.push_back(run.trace.phi_at(r));
}

void xi_eval(const ExperimentSpec& s, const std::vector<const ReplicaResult*>& used, Summary& out) {
    auto scales = scales_of(s.horizon, {0.125, 0.25, 0.5, 1.0});
    std::vector<double> sd;
    for (std::size_t j = 0; j < scales.size(); ++j) sd.push_back(sample_sd(column(used, "X", j)));
    auto fit = fit_exponent(scales, sd);
    out.estimates["xi"] = fit.slope;
    out.estimates["xi_std_error"] = fit.std_error;
    out.reference["xi"] = 2.0 / 3.0;
    verdict(out, "xi", fit.slope, kXiLo, kXiHi, used.size());

    // Interface wandering around its own empirical slope; informational.
    auto iscales = scales_of(s.horizon, {0.0625, 0.125, 0.25, 0.5});
    std::vector<double> isd;
    for (std::size_t j = 0; j < iscales.size(); ++j) {
        std::vector<double> dev;
        for (const auto* r : used) {
            const auto& phi = r->series.at("phi");
            double w = phi.back() / s.horizon;
            dev.push_back(phi[j] - w * iscales[j]);
        }
        isd.push_back(sample_sd(dev));
    }
    if (std::all_of(isd.begin(), isd.end(), [](double v) { return v > 0.0; }))
        out.estimates["interface_exponent"] = fit_exponent(iscales, isd).slope;
}

// --- beta_poisson --------------------------------------------------------

BoxGrid beta_grid(double T) {
    BoxGrid g;
    g.x0 = g.t0 = 0.25 * T;
    g.side = kBetaBox;
    g.nx = g.nt = std::max(1, static_cast<int>(std::floor(0.5 * T / kBetaBox)));
    return g;
}

void beta_check(const ExperimentSpec& s) {
    need_stationary(s);
    auto g = beta_grid(s.horizon);
    require(g.nx * g.nt >= 2, "beta_poisson: horizon too small for two boxes");
}

void beta_replica(const ExperimentSpec& s, std::uint64_t seed, ReplicaResult& out) {
    double T = s.horizon;
    auto d = level_decomposition(sample_config(s.lambda, s.rho, {T, T}, seed));
    out.series["counts"] = box_counts(all_beta_points(d), beta_grid(T));
}

void beta_eval(const ExperimentSpec&, const std::vector<const ReplicaResult*>& used, Summary& out) {
    std::vector<double> pooled;
    for (const auto* r : used) {
        const auto& c = r->series.at("counts");
        pooled.insert(pooled.end(), c.begin(), c.end());
    }
    auto fit = poisson_fit(pooled, kBetaBox * kBetaBox);
    out.estimates["intensity"] = fit.intensity;
    out.estimates["dispersion"] = fit.dispersion_index;
    out.estimates["boxes"] = static_cast<double>(fit.boxes);
    out.reference["intensity"] = 1.0;
    out.reference["dispersion"] = 1.0;
    verdict(out, "intensity", fit.intensity, 1.0 - kIntensityTol, 1.0 + kIntensityTol, fit.boxes);
    verdict(out, "dispersion", fit.dispersion_index, kDispersionLo, kDispersionHi, fit.boxes);
}

// --- density_profile -----------------------------------------------------

struct Bins {
    double lo;
    std::size_t n;
};

Bins density_bins(const ExperimentSpec& s) {
    double lo = s.rho * s.rho;
    double hi = s.lambda > 0.0 ? std::min(1.0 / (s.lambda * s.lambda), 16.0) : 16.0;
    auto n = static_cast<std::size_t>(std::floor((hi - lo) / kBinWidth + 0.5));
    return {lo, n};
}

void density_check(const ExperimentSpec& s) {
    need_rarefaction(s);
    require(density_bins(s).n >= 1, "density_profile: fan narrower than one bin");
}

void density_replica(const ExperimentSpec& s, std::uint64_t seed, ReplicaResult& out) {
    auto cfg = sample_config(s.lambda, s.rho, scp_window(s.lambda, s.horizon), seed);
    auto b = density_bins(s);
    std::vector<double> counts(b.n, 0.0);
    for (double x : final_positions(cfg)) {
        double f = (x / s.horizon - b.lo) / kBinWidth;
        if (f < 0.0) continue;
        auto i = static_cast<std::size_t>(f);
        if (i < b.n) counts[i] += 1.0;
    }
    out.series["counts"] = std::move(counts);
}

// Bin average of u(r, 1) by the midpoint rule on a fine subgrid.
double bin_average_u(double a, double w, const ModelParams& p) {
    constexpr int kSub = 64;
    double acc = 0.0;
    for (int i = 0; i < kSub; ++i) acc += burgers_u(a + (i + 0.5) * w / kSub, 1.0, p);
    return acc / kSub;
}

void density_eval(const ExperimentSpec& s, const std::vector<const ReplicaResult*>& used, Summary& out) {
    auto p = params(s);
    auto b = density_bins(s);
    double l1 = 0.0;
    for (std::size_t i = 0; i < b.n; ++i) {
        double rho_hat = simd::mean(column(used, "counts", i)) / (kBinWidth * s.horizon);
        double a = b.lo + static_cast<double>(i) * kBinWidth;
        l1 += std::abs(rho_hat - bin_average_u(a, kBinWidth, p)) * kBinWidth;
    }
    out.estimates["l1"] = l1;
    out.estimates["bins"] = static_cast<double>(b.n);
    verdict(out, "l1_distance", l1, 0.0, kBurgersL1Max, used.size());
}

// --- angle_bounds --------------------------------------------------------

void angle_replica(const ExperimentSpec& s, std::uint64_t seed, ReplicaResult& out) {
    double T = s.horizon;
    auto d = level_decomposition(sample_config(s.lambda, s.rho, {T, T}, seed));
    auto& slopes = out.series["terminal_slope"];
    for (int j = 0; j < kPathsPerReplica; ++j) {
        auto path = enumerate_beta_path(d, PathStrategy::uniform, mix64(seed + static_cast<std::uint64_t>(j) + 1));
        if (path.points.empty()) throw TruncationError("angle_bounds: empty β-path");
        const auto& end = path.points.back().location;
        slopes.push_back(end.t / end.x);
    }
}

void angle_eval(const ExperimentSpec& s, const std::vector<const ReplicaResult*>& used, Summary& out) {
    std::vector<double> all;
    for (const auto* r : used) {
        const auto& v = r->series.at("terminal_slope");
        all.insert(all.end(), v.begin(), v.end());
    }
    double lo = s.lambda * s.lambda - kAngleSlack;
    double hi = s.rho > 0.0 ? 1.0 / (s.rho * s.rho) + kAngleSlack : std::numeric_limits<double>::infinity();
    double f = fraction_within(all, lo, hi);
    out.estimates["fraction_in_band"] = f;
    out.estimates["min_slope"] = *std::min_element(all.begin(), all.end());
    out.estimates["max_slope"] = *std::max_element(all.begin(), all.end());
    out.reference["band_lo"] = lo;
    if (std::isfinite(hi)) out.reference["band_hi"] = hi;
    verdict(out, "fraction_in_band", f, 1.0, 1.0, all.size());
}

// --- tail_check ----------------------------------------------------------

void tail_replica(const ExperimentSpec& s, std::uint64_t seed, ReplicaResult& out) {
    double T = s.horizon;
    auto d = level_decomposition(sample_config(0.0, 0.0, {T, T}, seed));
    out.scalars["L"] = last_passage_from_origin(d, {T, T});
}

void tail_eval(const ExperimentSpec& s, const std::vector<const ReplicaResult*>& used, Summary& out) {
    double T = s.horizon;
    double bound = kTailScale * std::cbrt(T);
    auto v = scalars(used, "L");
    auto k = std::count_if(v.begin(), v.end(), [&](double L) { return std::abs(L - 2.0 * T) > bound; });
    double f = static_cast<double>(k) / static_cast<double>(v.size());
    out.estimates["exceed_fraction"] = f;
    out.estimates["mean_L"] = simd::mean(v);
    out.reference["bound"] = bound;
    // Strictly below the nominal fraction.
    verdict(out, "exceed_fraction", f, 0.0, std::nextafter(kTailFraction, 0.0), v.size());
}

// --- delta_straightness --------------------------------------------------

constexpr double kDelta = 0.25;

void straight_replica(const ExperimentSpec& s, std::uint64_t seed, ReplicaResult& out) {
    double T = s.horizon;
    auto d = level_decomposition(sample_config(s.lambda, s.rho, {T, T}, seed));
    int hi = std::min(static_cast<int>(T), d.max_complete_level);
    int lo = std::max(1, static_cast<int>(T / 2));
    auto& norms = out.series["norm"];
    auto& angles = out.series["max_angle"];
    norms.clear();
    angles.clear();
    if (lo > hi) return;
    for (const auto& sm : delta_straightness_stat(d, lo, hi, kDelta, params(s), 0.05, 20)) {
        norms.push_back(sm.norm);
        angles.push_back(sm.max_angle);
    }
}

double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

void straight_eval(const ExperimentSpec&, const std::vector<const ReplicaResult*>& used, Summary& out) {
    std::vector<double> norms, angles;
    for (const auto* r : used) {
        const auto& n = r->series.at("norm");
        const auto& a = r->series.at("max_angle");
        norms.insert(norms.end(), n.begin(), n.end());
        angles.insert(angles.end(), a.begin(), a.end());
    }
    out.estimates["samples"] = static_cast<double>(angles.size());
    if (angles.empty()) return;
    out.estimates["median_max_angle"] = median(angles);
    std::vector<double> env;
    for (double n : norms) env.push_back(std::pow(n, -kDelta));
    out.estimates["median_envelope"] = median(env);
}

const std::vector<ExperimentDef> kRegistry = {
    {"cdf_scp", "second-class particle speed distribution", {0.5, 1.0, 500.0, 1000}, need_rarefaction,
     cdf_scp_replica, cdf_scp_eval},
    {"lln_stationary", "stationary speeds of the second-class particles and the interface",
     {1.0, 1.0, 500.0, 200}, need_stationary, lln_replica, lln_eval},
    {"interface_slope", "competition interface asymptotic slope", {0.5, 1.0, 300.0, 100}, need_no_shock,
     interface_replica, interface_eval},
    {"shape_check", "last-passage shape 2 sqrt(xt)", {0.0, 0.0, 100.0, 100}, need_zero_boundary,
     shape_replica, shape_eval},
    {"fluct_chi", "last-passage fluctuation exponent", {0.0, 0.0, 400.0, 300}, need_zero_boundary,
     chi_replica, chi_eval},
    {"fluct_xi", "second-class particle wandering exponent", {1.0, 1.0, 400.0, 300}, need_stationary,
     xi_replica, xi_eval},
    {"beta_poisson", "β-points as a Poisson field", {1.0, 1.0, 200.0, 100}, beta_check, beta_replica,
     beta_eval},
    {"density_profile", "particle density against the rarefaction fan", {0.5, 1.0, 500.0, 50},
     density_check, density_replica, density_eval},
    {"angle_bounds", "terminal slopes of β-paths", {0.5, 1.0, 300.0, 100}, need_no_shock, angle_replica,
     angle_eval},
    {"tail_check", "last-passage tail frequency", {0.0, 0.0, 200.0, 1000}, need_zero_boundary,
     tail_replica, tail_eval},
    {"delta_straightness", "angular spread of outgoing regions", {0.0, 0.0, 200.0, 20}, need_no_shock,
     straight_replica, straight_eval},
};

}  // namespace

const std::vector<ExperimentDef>& experiments() { return kRegistry; }

const ExperimentDef& find_experiment(std::string_view id) {
    for (const auto& e : kRegistry)
        if (e.id == id) return e;
    throw InvalidArgument("unknown experiment: " + std::string(id));
}

Window scp_window(double lambda, double horizon) {
    double reach = lambda > 0.0 ? 1.0 / (lambda * lambda) : 16.0;
    return {1.1 * reach * horizon + 4.0 * std::cbrt(horizon * horizon), horizon};
}

Window png_window(double horizon) {
    double side = std::sqrt(2.0) * horizon;
    return {side, side};
}

}  // namespace lpplab
