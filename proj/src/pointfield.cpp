#include "lpplab/pointfield.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <unordered_set>

#include "lpplab/error.hpp"
#include "lpplab/rng.hpp"

namespace lpplab {

namespace {

// Points of a 1-d Poisson process of `rate` on (0, limit), in increasing
// order, with strictly increasing values.
std::vector<double> poisson_line(RandomStream& rng, double rate, double limit) {
    std::vector<double> out;
    if (rate <= 0.0) return out;
    out.reserve(static_cast<std::size_t>(rate * limit * 1.1) + 8);
    double pos = 0.0;
    for (;;) {
        double next = pos + rng.exponential(rate);
        if (next >= limit) break;
        if (next == pos) continue;  // gap lost to rounding
        pos = next;
        out.push_back(pos);
    }
    return out;
}

// LSD radix sort of nonnegative doubles by bit pattern (monotone for x >= 0).
std::vector<std::uint64_t> sorted_bits(std::vector<std::uint64_t> keys) {
    std::vector<std::uint64_t> tmp(keys.size());
    for (int shift = 0; shift < 64; shift += 16) {
        std::vector<std::size_t> count(65537, 0);
        for (auto k : keys) ++count[((k >> shift) & 0xFFFF) + 1];
        for (std::size_t i = 1; i < count.size(); ++i) count[i] += count[i - 1];
        for (auto k : keys) tmp[count[(k >> shift) & 0xFFFF]++] = k;
        keys.swap(tmp);
    }
    return keys;
}

std::unordered_set<std::uint64_t> duplicated_values(const std::vector<double>& a,
                                                    const std::vector<double>& b) {
    std::vector<std::uint64_t> keys;
    keys.reserve(a.size() + b.size());
    for (double v : a) keys.push_back(std::bit_cast<std::uint64_t>(v));
    for (double v : b) keys.push_back(std::bit_cast<std::uint64_t>(v));
    auto sorted = sorted_bits(std::move(keys));
    std::unordered_set<std::uint64_t> dup;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) dup.insert(sorted[i]);
    return dup;
}

double redraw(RandomStream& repair, double limit) {
    for (;;) {
        double v = repair.uniform_open() * limit;
        if (v > 0.0 && v < limit) return v;
    }
}

bool strictly_increasing(const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

}  // namespace

PointConfig sample_config(double lambda, double rho, Window window, std::uint64_t seed) {
    require(lambda >= 0.0 && std::isfinite(lambda), "sample_config: lambda must be >= 0");
    require(rho >= 0.0 && std::isfinite(rho), "sample_config: rho must be >= 0");
    require(window.x_max > 0.0 && window.t_max > 0.0, "sample_config: empty window");

    PointConfig c;
    c.lambda = lambda;
    c.rho = rho;
    c.window = window;
    c.seed = seed;

    // Bulk: a Poisson process in time with rate x_max, uniform abscissas.
    {
        RandomStream rng(seed, Stream::bulk);
        auto times = poisson_line(rng, window.x_max, window.t_max);
        c.bulk.reserve(times.size());
        for (double t : times) {
            double x = 0.0;
            do {
                x = rng.uniform_open() * window.x_max;
            } while (!(x > 0.0 && x < window.x_max));
            c.bulk.push_back({x, t});
        }
    }
    {
        RandomStream rng(seed, Stream::sources);
        c.sources = poisson_line(rng, lambda, window.x_max);
    }
    {
        RandomStream rng(seed, Stream::sinks);
        c.sinks = poisson_line(rng, rho, window.t_max);
    }

    RandomStream repair(seed, Stream::repair);

    // Abscissas of bulk points and sources must be pairwise distinct.
    for (;;) {
        std::vector<double> xs(c.bulk.size());
        std::transform(c.bulk.begin(), c.bulk.end(), xs.begin(),
                       [](const PlanarPoint& p) { return p.x; });
        if (duplicated_values(xs, c.sources).empty()) break;
        // Keep the first occurrence of each value, redraw later ones.
        std::unordered_set<std::uint64_t> seen;
        for (auto& p : c.bulk) {
            if (!seen.insert(std::bit_cast<std::uint64_t>(p.x)).second)
                p.x = redraw(repair, window.x_max);
        }
        bool sources_changed = false;
        for (auto& s : c.sources) {
            if (!seen.insert(std::bit_cast<std::uint64_t>(s)).second) {
                s = redraw(repair, window.x_max);
                sources_changed = true;
            }
        }
        if (sources_changed) std::sort(c.sources.begin(), c.sources.end());
    }

    // Ordinates of sinks must avoid the bulk ordinates (bulk ones are already
    // strictly increasing by construction).
    for (;;) {
        bool changed = false;
        for (auto& s : c.sinks) {
            auto it = std::lower_bound(c.bulk.begin(), c.bulk.end(), s,
                                       [](const PlanarPoint& p, double v) { return p.t < v; });
            if (it != c.bulk.end() && it->t == s) {
                s = redraw(repair, window.t_max);
                changed = true;
            }
        }
        for (std::size_t i = 1; i < c.sinks.size(); ++i) {
            if (c.sinks[i] == c.sinks[i - 1]) {
                c.sinks[i] = redraw(repair, window.t_max);
                changed = true;
            }
        }
        if (!changed) break;
        std::sort(c.sinks.begin(), c.sinks.end());
    }
    return c;
}

PointConfig make_config(std::vector<PlanarPoint> bulk, std::vector<double> sources,
                        std::vector<double> sinks, Window window, double lambda, double rho,
                        std::uint64_t seed) {
    PointConfig c;
    c.bulk = std::move(bulk);
    c.sources = std::move(sources);
    c.sinks = std::move(sinks);
    c.window = window;
    c.lambda = lambda;
    c.rho = rho;
    c.seed = seed;
    std::sort(c.bulk.begin(), c.bulk.end(),
              [](const PlanarPoint& a, const PlanarPoint& b) { return a.t < b.t; });
    std::sort(c.sources.begin(), c.sources.end());
    std::sort(c.sinks.begin(), c.sinks.end());
    validate(c);
    return c;
}

void validate(const PointConfig& c) {
    require(c.lambda >= 0.0 && c.rho >= 0.0, "config: negative intensity");
    require(c.window.x_max > 0.0 && c.window.t_max > 0.0, "config: empty window");
    for (const auto& p : c.bulk)
        require(p.x > 0.0 && p.x < c.window.x_max && p.t > 0.0 && p.t < c.window.t_max,
                "config: bulk point outside the open window");
    for (double s : c.sources)
        require(s > 0.0 && s < c.window.x_max, "config: source outside (0, x_max)");
    for (double s : c.sinks) require(s > 0.0 && s < c.window.t_max, "config: sink outside (0, t_max)");

    for (std::size_t i = 1; i < c.bulk.size(); ++i)
        require(c.bulk[i - 1].t < c.bulk[i].t, "config: bulk ordinates not distinct/sorted");
    require(strictly_increasing(c.sources), "config: sources not distinct/sorted");
    require(strictly_increasing(c.sinks), "config: sinks not distinct/sorted");

    std::vector<double> xs;
    xs.reserve(c.bulk.size());
    for (const auto& p : c.bulk) xs.push_back(p.x);
    require(duplicated_values(xs, c.sources).empty(), "config: duplicate abscissa");
    for (double s : c.sinks) {
        auto it = std::lower_bound(c.bulk.begin(), c.bulk.end(), s,
                                   [](const PlanarPoint& p, double v) { return p.t < v; });
        require(it == c.bulk.end() || it->t != s, "config: sink shares an ordinate with bulk");
    }
}

PointConfig transpose(const PointConfig& c) {
    PointConfig out;
    out.bulk.reserve(c.bulk.size());
    for (const auto& p : c.bulk) out.bulk.push_back({p.t, p.x});
    std::sort(out.bulk.begin(), out.bulk.end(),
              [](const PlanarPoint& a, const PlanarPoint& b) { return a.t < b.t; });
    out.sources = c.sinks;
    out.sinks = c.sources;
    out.lambda = c.rho;
    out.rho = c.lambda;
    out.window = {c.window.t_max, c.window.x_max};
    out.seed = c.seed;
    return out;
}

std::vector<ConfigPoint> points_by_x(const PointConfig& c) {
    std::vector<ConfigPoint> pts;
    pts.reserve(c.size());
    for (double s : c.sinks) pts.push_back({{0.0, s}, PointKind::sink});
    std::size_t mid = pts.size();
    for (const auto& p : c.bulk) pts.push_back({p, PointKind::bulk});
    for (double s : c.sources) pts.push_back({{s, 0.0}, PointKind::source});
    std::sort(pts.begin() + static_cast<std::ptrdiff_t>(mid), pts.end(),
              [](const ConfigPoint& a, const ConfigPoint& b) { return a.p.x < b.p.x; });
    return pts;
}

std::vector<ConfigPoint> points_by_t(const PointConfig& c) {
    std::vector<ConfigPoint> pts;
    pts.reserve(c.size());
    for (double s : c.sources) pts.push_back({{s, 0.0}, PointKind::source});
    // Merge bulk and sinks, both already sorted by t.
    std::size_t i = 0, j = 0;
    while (i < c.bulk.size() || j < c.sinks.size()) {
        if (j == c.sinks.size() || (i < c.bulk.size() && c.bulk[i].t < c.sinks[j])) {
            pts.push_back({c.bulk[i++], PointKind::bulk});
        } else {
            pts.push_back({{0.0, c.sinks[j++]}, PointKind::sink});
        }
    }
    return pts;
}

void to_json(nlohmann::json& j, const PointConfig& c) {
    nlohmann::json bulk = nlohmann::json::array();
    for (const auto& p : c.bulk) bulk.push_back({p.x, p.t});
    j = nlohmann::json{{"lambda", c.lambda},
                       {"rho", c.rho},
                       {"window", {c.window.x_max, c.window.t_max}},
                       {"seed", c.seed},
                       {"bulk", std::move(bulk)},
                       {"sources", c.sources},
                       {"sinks", c.sinks}};
}

void from_json(const nlohmann::json& j, PointConfig& c) {
    try {
        std::vector<PlanarPoint> bulk;
        for (const auto& p : j.at("bulk")) {
            if (!p.is_array() || p.size() != 2) throw SchemaError("config: bulk entry must be [x, t]");
            bulk.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        auto w = j.at("window");
        if (!w.is_array() || w.size() != 2) throw SchemaError("config: window must be [x_max, t_max]");
        c = make_config(std::move(bulk), j.at("sources").get<std::vector<double>>(),
                        j.at("sinks").get<std::vector<double>>(),
                        {w[0].get<double>(), w[1].get<double>()}, j.at("lambda").get<double>(),
                        j.at("rho").get<double>(), j.at("seed").get<std::uint64_t>());
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("config: ") + e.what());
    }
}

void save_config(const PointConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << nlohmann::json(config).dump() << '\n';
}

PointConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return j.get<PointConfig>();
}

}  // namespace lpplab
