#include "lpplab/hammersley.hpp"

#include <algorithm>
#include <limits>

#include "lpplab/error.hpp"

namespace lpplab {

namespace {

// Particle positions in increasing order. Sinks remove from the front, so
// the live range is [head, end).
class Engine {
  public:
    struct Move {
        bool idle = false;     // sink with no particle
        bool created = false;  // bulk point right of every particle
        double from = 0.0;     // previous position of the moved particle
        int level = 0;         // level of the moved / created / idle-sink path
    };

    explicit Engine(const std::vector<double>& sources) : pos_(sources) {}

    std::size_t alive() const { return pos_.size() - head_; }

    std::vector<double> positions() const {
        return {pos_.begin() + static_cast<std::ptrdiff_t>(head_), pos_.end()};
    }

    Move bulk(double x) {
        Move m;
        auto first = pos_.begin() + static_cast<std::ptrdiff_t>(head_);
        auto it = std::upper_bound(first, pos_.end(), x);
        auto rank = static_cast<int>(it - first);
        m.level = sinks_ + rank + 1;
        if (it == pos_.end()) {
            m.created = true;
            pos_.push_back(x);
        } else {
            m.from = *it;
            *it = x;
        }
        return m;
    }

    Move sink() {
        Move m;
        m.level = sinks_ + 1;
        ++sinks_;
        if (alive() == 0) {
            m.idle = true;
            return m;
        }
        m.from = pos_[head_++];
        if (head_ > 4096 && head_ * 2 > pos_.size()) {
            pos_.erase(pos_.begin(), pos_.begin() + static_cast<std::ptrdiff_t>(head_));
            head_ = 0;
        }
        return m;
    }

  private:
    std::vector<double> pos_;
    std::size_t head_ = 0;
    int sinks_ = 0;
};

// Visits bulk points and sinks in time order.
template <class OnBulk, class OnSink>
void for_each_event(const PointConfig& c, OnBulk on_bulk, OnSink on_sink) {
    std::size_t i = 0, j = 0;
    while (i < c.bulk.size() || j < c.sinks.size()) {
        if (j == c.sinks.size() || (i < c.bulk.size() && c.bulk[i].t < c.sinks[j])) {
            if (!on_bulk(c.bulk[i++])) return;
        } else {
            if (!on_sink(c.sinks[j++])) return;
        }
    }
}

}  // namespace

std::vector<PlanarPoint> Trajectory::level_points() const {
    std::vector<PlanarPoint> out;
    if (death) out.push_back({0.0, *death});
    for (auto it = jumps.rbegin(); it != jumps.rend(); ++it) out.push_back({it->x, it->t});
    if (born_from != PointKind::sink) out.push_back(birth);
    return out;
}

std::vector<PlanarPoint> Trajectory::left_turns() const {
    std::vector<PlanarPoint> out;
    if (born_from == PointKind::sink) return out;
    double x = birth.x;
    for (const auto& j : jumps) {
        out.push_back({x, j.t});
        x = j.x;
    }
    if (death) out.push_back({x, *death});
    std::reverse(out.begin(), out.end());
    return out;
}

std::optional<double> Trajectory::position_at(double t) const {
    if (t < birth.t || (death && t >= *death)) return std::nullopt;
    auto it = std::upper_bound(jumps.begin(), jumps.end(), t,
                               [](double v, const Jump& j) { return v < j.t; });
    return it == jumps.begin() ? birth.x : std::prev(it)->x;
}

HammersleyRun evolve(const PointConfig& config) {
    HammersleyRun run;
    run.window = config.window;
    run.sinks = config.sinks;
    auto& traj = run.trajectories;
    for (std::size_t i = 0; i < config.sources.size(); ++i)
        traj.push_back({static_cast<int>(i) + 1, {config.sources[i], 0.0}, PointKind::source, {}, {}});

    Engine engine(config.sources);
    for_each_event(
        config,
        [&](const PlanarPoint& p) {
            auto m = engine.bulk(p.x);
            if (m.created)
                traj.push_back({m.level, p, PointKind::bulk, {}, {}});
            else
                traj[static_cast<std::size_t>(m.level - 1)].jumps.push_back({p.t, p.x});
            return true;
        },
        [&](double s) {
            auto m = engine.sink();
            if (m.idle)
                traj.push_back({m.level, {0.0, s}, PointKind::sink, {}, s});
            else
                traj[static_cast<std::size_t>(m.level - 1)].death = s;
            return true;
        });
    return run;
}

int count_N(const HammersleyRun& run, double x, double t) {
    require(x >= 0.0 && x <= run.window.x_max && t >= 0.0 && t <= run.window.t_max,
            "count_N: query outside the window");
    int n = static_cast<int>(std::upper_bound(run.sinks.begin(), run.sinks.end(), t) - run.sinks.begin());
    for (const auto& tr : run.trajectories) {
        auto p = tr.position_at(t);
        if (p && *p > 0.0 && *p <= x) ++n;
    }
    return n;
}

std::vector<double> positions_at(const HammersleyRun& run, double t) {
    std::vector<double> out;
    for (const auto& tr : run.trajectories)
        if (auto p = tr.position_at(t)) out.push_back(*p);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> final_positions(const PointConfig& config) {
    Engine engine(config.sources);
    for_each_event(
        config,
        [&](const PlanarPoint& p) {
            engine.bulk(p.x);
            return true;
        },
        [&](double) {
            engine.sink();
            return true;
        });
    return engine.positions();
}

double ScpTrajectory::position_at(double t) const {
    require(t >= 0.0, "position_at: negative time");
    if (flavor == ScpFlavor::normal) {
        if (t > valid_until || (truncated && t == valid_until))
            throw TruncationError("second-class particle undetermined past the window");
        auto it = std::upper_bound(points.begin(), points.end(), t,
                                   [](double v, const PlanarPoint& p) { return v < p.t; });
        return std::prev(it)->x;
    }
    // The dual path runs horizontally at height t_n until x_{n+1}.
    auto it = std::lower_bound(points.begin(), points.end(), t,
                               [](const PlanarPoint& p, double v) { return p.t < v; });
    if (t == 0.0) return 0.0;
    if (it == points.end())
        throw TruncationError("dual second-class particle undetermined past the window");
    return it->x;
}

ScpTrajectory second_class(const PointConfig& config) {
    ScpTrajectory scp;
    scp.points.push_back({0.0, 0.0});
    scp.valid_until = config.window.t_max;
    Engine engine(config.sources);
    double X = 0.0;

    auto stop = [&](double t) {
        scp.truncated = true;
        scp.valid_until = t;
        return false;
    };
    auto jump = [&](double to, double t, int level) {
        if (level != static_cast<int>(scp.points.size())) return stop(t);
        X = to;
        scp.points.push_back({to, t});
        return true;
    };

    for_each_event(
        config,
        [&](const PlanarPoint& p) {
            if (p.x > X) {
                engine.bulk(p.x);
                return true;
            }
            auto m = engine.bulk(p.x);
            // A particle from beyond the window would have been pulled.
            if (m.created) return stop(p.t);
            if (m.from > X) return jump(m.from, p.t, m.level);
            return true;
        },
        [&](double s) {
            auto m = engine.sink();
            if (m.idle) return stop(s);
            if (m.from > X) return jump(m.from, s, m.level);
            return true;
        });

    if (scp.jumps() == 0) throw NoSinkExit("no particle exits through a sink inside the window");
    return scp;
}

ScpTrajectory dual_second_class(const PointConfig& config) {
    ScpTrajectory scp;
    try {
        scp = second_class(transpose(config));
    } catch (const NoSinkExit&) {
        throw NoSinkExit("no source is consumed by the dual dynamics inside the window");
    }
    scp.flavor = ScpFlavor::dual;
    for (auto& p : scp.points) p = {p.t, p.x};
    return scp;
}

}  // namespace lpplab
