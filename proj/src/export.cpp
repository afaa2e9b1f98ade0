#include "lpplab/export.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lpplab/error.hpp"
#include "lpplab/geometry.hpp"

namespace lpplab {

namespace {

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> v;
    if (n == 1) return {lo};
    for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
    return v;
}

}  // namespace

void write_levels_csv(std::ostream& out, const LevelDecomposition& d) {
    out << "level,x,t,kind\n";
    out.precision(17);
    for (int k = 1; k <= d.num_levels(); ++k) {
        for (const auto& c : d.at(k)) out << k << ',' << c.p.x << ',' << c.p.t << ",point\n";
        for (const auto& b : beta_points(d, k))
            out << k << ',' << b.location.x << ',' << b.location.t << ",beta\n";
    }
}

void write_trajectories_csv(std::ostream& out, const HammersleyRun& run) {
    out << "particle,time,position\n";
    out.precision(17);
    for (const auto& tr : run.trajectories) {
        out << tr.level << ',' << tr.birth.t << ',' << tr.birth.x << '\n';
        double x = tr.birth.x;
        for (const auto& j : tr.jumps) {
            out << tr.level << ',' << j.t << ',' << x << '\n';
            out << tr.level << ',' << j.t << ',' << j.x << '\n';
            x = j.x;
        }
        double end = tr.death ? *tr.death : run.window.t_max;
        out << tr.level << ',' << end << ',' << x << '\n';
    }
}

void write_trajectories_svg(std::ostream& out, const HammersleyRun& run) {
    constexpr double S = 600, M = 20;
    double sx = (S - 2 * M) / run.window.x_max, st = (S - 2 * M) / run.window.t_max;
    auto px = [&](double x) { return M + x * sx; };
    auto py = [&](double t) { return S - M - t * st; };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << S << "\" height=\"" << S << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& tr : run.trajectories) {
        out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.7\" points=\"";
        double x = tr.birth.x;
        out << px(x) << ',' << py(tr.birth.t) << ' ';
        for (const auto& j : tr.jumps) {
            out << px(x) << ',' << py(j.t) << ' ' << px(j.x) << ',' << py(j.t) << ' ';
            x = j.x;
        }
        double end = tr.death ? *tr.death : run.window.t_max;
        out << px(x) << ',' << py(end) << "\"/>\n";
        for (const auto& b : tr.left_turns())
            out << "<circle cx=\"" << px(b.x) << "\" cy=\"" << py(b.t) << "\" r=\"1.5\" fill=\"crimson\"/>\n";
    }
    out << "</svg>\n";
}

void write_heights_csv(std::ostream& out, const HeightProfile& h, int nz, int ns) {
    require(nz >= 1 && ns >= 1, "write_heights_csv: empty grid");
    out << "z,s,h\n";
    out.precision(17);
    for (double s : grid(0.0, h.horizon(), ns))
        for (double c : grid(-1.0, 1.0, nz)) out << c * s << ',' << s << ',' << h.height(c * s, s) << '\n';
}

void write_cdf_svg(std::ostream& out, std::span<const double> samples,
                   const std::function<double(double)>& reference, double lo, double hi,
                   const std::string& title) {
    require(hi > lo, "write_cdf_svg: empty range");
    constexpr double W = 640, H = 400, M = 40;
    auto px = [&](double r) { return M + (r - lo) / (hi - lo) * (W - 2 * M); };
    auto py = [&](double f) { return H - M - f * (H - 2 * M); };
    std::vector<double> v(samples.begin(), samples.end());
    std::sort(v.begin(), v.end());

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << M << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title
        << "</text>\n";
    out << "<line x1=\"" << M << "\" y1=\"" << py(0) << "\" x2=\"" << W - M << "\" y2=\"" << py(0)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << M << "\" y1=\"" << py(0) << "\" x2=\"" << M << "\" y2=\"" << py(1)
        << "\" stroke=\"black\"/>\n";

    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    double prev = 0.0;
    out << px(lo) << ',' << py(0) << ' ';
    for (std::size_t i = 0; i < v.size(); ++i) {
        double r = std::clamp(v[i], lo, hi);
        double f = static_cast<double>(i + 1) / static_cast<double>(v.size());
        out << px(r) << ',' << py(prev) << ' ' << px(r) << ',' << py(f) << ' ';
        prev = f;
    }
    out << px(hi) << ',' << py(prev) << "\"/>\n";

    out << "<polyline fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\" points=\"";
    for (double r : grid(lo, hi, 200)) out << px(r) << ',' << py(reference(r)) << ' ';
    out << "\"/>\n</svg>\n";
}

void tabulate_cdf(std::ostream& out, const ModelParams& p, int n) {
    require(n >= 2, "tabulate: need at least two rows");
    auto [a, b] = fan_speeds(p);
    // Rows run from one end of the fan to the other.
    double hi = std::isfinite(b) ? b : a + 16.0;
    out << "r,cdf\n";
    out.precision(17);
    for (double r : grid(a, hi, n)) out << r << ',' << z_cdf(r, p) << '\n';
}

void tabulate_shape(std::ostream& out, double horizon, int n) {
    require(n >= 2 && horizon > 0.0, "tabulate: need at least two rows and a positive horizon");
    out << "c,f,alpha_over_s\n";
    out.precision(17);
    for (double c : grid(-1.0, 1.0, n)) {
        auto q = unrotate({c * horizon, horizon});
        out << c << ',' << limit_shape_f(c) << ',' << shape_alpha(q.x, q.t) / horizon << '\n';
    }
}

void tabulate_burgers(std::ostream& out, const ModelParams& p, int n) {
    require(n >= 2, "tabulate: need at least two rows");
    auto [a, b] = fan_speeds(p);
    double hi = std::isfinite(b) ? b + 1.0 : a + 16.0;
    out << "r,u\n";
    out.precision(17);
    for (double r : grid(std::max(1e-3, a - 1.0), hi, n)) out << r << ',' << burgers_u(r, 1.0, p) << '\n';
}

}  // namespace lpplab
