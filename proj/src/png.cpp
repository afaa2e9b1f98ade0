#include "lpplab/png.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

#include "lpplab/error.hpp"
#include "lpplab/rng.hpp"
#include "lpplab/simd/kernels.hpp"

namespace lpplab {

std::vector<Nucleation> nucleations_from(const PointConfig& config) {
    std::vector<RotatedPoint> rotated(config.bulk.size());
    simd::rotate(config.bulk, rotated);

    std::vector<Nucleation> out;
    out.reserve(config.size());
    for (const auto& r : rotated) out.push_back({r, NucleationOrigin::bulk});
    for (double x : config.sources) out.push_back({rotate({x, 0.0}), NucleationOrigin::plus_boundary});
    for (double t : config.sinks) out.push_back({rotate({0.0, t}), NucleationOrigin::minus_boundary});
    std::sort(out.begin(), out.end(),
              [](const Nucleation& a, const Nucleation& b) { return a.at.s < b.at.s; });
    return out;
}

int HeightProfile::height(double z, double s) const {
    require(s >= 0.0 && s <= horizon_, "height: time outside [0, horizon]");
    int h = 0;
    for (double m : minus_)
        if (m <= s && -s <= z) ++h;
    for (double p : plus_)
        if (p <= s && s < z) --h;
    for (const auto& st : steps_) {
        if (st.born > s || s > st.died) continue;
        double pos = st.up ? st.key - s : st.key + s;
        if (st.up ? pos <= z : pos < z) h += st.up ? 1 : -1;
    }
    return h;
}

double InterfaceTrace::phi_at(double s) const {
    require(s >= 0.0 && s <= horizon, "phi_at: time outside [0, horizon]");
    auto it = std::upper_bound(points.begin(), points.end(), s,
                               [](double v, const RotatedPoint& p) { return v < p.s; });
    return std::prev(it)->z;
}

// Interior steps live in an ordered set keyed by their position at the
// current time; adjacent down/up pairs are scheduled to collide.
class PngEngine {
  public:
    PngEngine(double horizon, bool two_type, std::uint64_t seed)
        : two_type_(two_type), coin_(seed, Stream::coin), order_(Cmp{this}) {
        profile_.horizon_ = horizon;
        trace_.horizon = horizon;
    }

    void run(const std::vector<Nucleation>& nucleations) {
        double horizon = profile_.horizon_;
        for (const auto& n : nucleations) {
            if (n.at.s > horizon) break;
            collide_until(n.at.s);
            now_ = n.at.s;
            switch (n.origin) {
                case NucleationOrigin::bulk: nucleate(n.at); break;
                case NucleationOrigin::plus_boundary: nucleate_plus(n.at); break;
                case NucleationOrigin::minus_boundary: nucleate_minus(n.at); break;
            }
        }
        collide_until(horizon);
        build_trace();
    }

    HeightProfile profile_;
    InterfaceTrace trace_;

  private:
    struct Live {
        bool up;
        double key;
        double z0, s0;  // nucleation point; exact positions at birth
        int level;
        int type;
        std::size_t rec;
        bool alive;
    };
    struct Cmp {
        const PngEngine* e;
        bool operator()(int i, int j) const {
            const Live& a = e->live_[static_cast<std::size_t>(i)];
            const Live& b = e->live_[static_cast<std::size_t>(j)];
            if (a.up == b.up) return a.key != b.key ? a.key < b.key : i < j;
            double pa = e->position(a), pb = e->position(b);
            if (pa != pb) return pa < pb;
            return a.up;
        }
    };
    using Order = std::set<int, Cmp>;
    struct Collision {
        double s;
        int left, right;
        bool operator>(const Collision& o) const { return s > o.s; }
    };
    struct Layer {
        bool has_r1 = false;  // rightmost type-1 down-step
        double r1_key = 0.0;
        bool collided = false;
        double phi = 0.0, sigma = 0.0;
    };

    double position(const Live& l) const { return l.up ? l.z0 - (now_ - l.s0) : l.z0 + (now_ - l.s0); }

    int add(bool up, const RotatedPoint& p, int level, int type) {
        double key = up ? p.z + p.s : p.z - p.s;
        profile_.steps_.push_back(
            {up, key, now_, std::numeric_limits<double>::infinity(), level, type});
        live_.push_back({up, key, p.z, p.s, level, type, profile_.steps_.size() - 1, true});
        int id = static_cast<int>(live_.size()) - 1;
        where_.push_back(order_.insert(id).first);
        if (!up && type == 1) {
            Layer& L = layer(level);
            if (!L.has_r1 || key > L.r1_key) {
                L.has_r1 = true;
                L.r1_key = key;
            }
        }
        return id;
    }

    Layer& layer(int k) {
        if (static_cast<std::size_t>(k) >= layers_.size()) layers_.resize(static_cast<std::size_t>(k) + 1);
        return layers_[static_cast<std::size_t>(k)];
    }

    // Height just left of the step `id` (before it is counted).
    int height_left_of(int id) const {
        auto it = where_[static_cast<std::size_t>(id)];
        if (it == order_.begin()) return minus_count_;
        const Live& l = live_[static_cast<std::size_t>(*std::prev(it))];
        return l.up ? l.level : l.level - 1;
    }

    int classify(int below, double z) {
        if (below == 0) {
            if (z < 0.0) return 1;
            if (z > 0.0) return 2;
            return coin_.coin() ? 1 : 2;
        }
        const Layer& L = layer(below);
        if (L.collided) return z < L.phi ? 1 : 2;
        if (L.has_r1) return z < L.r1_key + now_ ? 1 : 2;
        return 2;
    }

    void maybe_schedule(Order::iterator left) {
        if (left == order_.end()) return;
        auto right = std::next(left);
        if (right == order_.end()) return;
        const Live& a = live_[static_cast<std::size_t>(*left)];
        const Live& b = live_[static_cast<std::size_t>(*right)];
        if (a.up || !b.up) return;
        double s = 0.5 * (b.z0 - a.z0 + a.s0 + b.s0);
        queue_.push({std::max(s, now_), *left, *right});
    }

    void schedule_around(int id) {
        auto it = where_[static_cast<std::size_t>(id)];
        if (it != order_.begin()) maybe_schedule(std::prev(it));
        maybe_schedule(it);
    }

    void nucleate(const RotatedPoint& p) {
        int u = add(true, p, 0, 0);
        int k = height_left_of(u) + 1;
        int type = two_type_ ? classify(k - 1, p.z) : 0;
        set_level(u, k, type);
        int d = add(false, p, k, type);
        schedule_around(u);
        schedule_around(d);
    }

    void nucleate_plus(const RotatedPoint& p) {
        profile_.plus_.push_back(p.s);
        int u = add(true, p, 0, 0);
        set_level(u, height_left_of(u) + 1, two_type_ ? 2 : 0);
        schedule_around(u);
    }

    void nucleate_minus(const RotatedPoint& p) {
        profile_.minus_.push_back(p.s);
        int k = ++minus_count_;
        int d = add(false, p, k, two_type_ ? 1 : 0);
        schedule_around(d);
    }

    void set_level(int id, int level, int type) {
        Live& l = live_[static_cast<std::size_t>(id)];
        l.level = level;
        l.type = type;
        profile_.steps_[l.rec].level = level;
        profile_.steps_[l.rec].type = type;
    }

    void collide_until(double s_max) {
        while (!queue_.empty() && queue_.top().s <= s_max) {
            Collision c = queue_.top();
            queue_.pop();
            Live& a = live_[static_cast<std::size_t>(c.left)];
            Live& b = live_[static_cast<std::size_t>(c.right)];
            if (!a.alive || !b.alive) continue;
            auto ia = where_[static_cast<std::size_t>(c.left)];
            if (std::next(ia) != where_[static_cast<std::size_t>(c.right)]) continue;

            now_ = c.s;
            a.alive = b.alive = false;
            profile_.steps_[a.rec].died = now_;
            profile_.steps_[b.rec].died = now_;
            if (two_type_) {
                if (a.type == 1 && b.type == 2) {
                    Layer& L = layer(a.level);
                    L.collided = true;
                    L.phi = position(a);
                    L.sigma = now_;
                    L.has_r1 = false;
                } else if (a.type == 2 && b.type == 1) {
                    ++trace_.monotonicity_violations;
                }
            }
            auto before = ia == order_.begin() ? order_.end() : std::prev(ia);
            order_.erase(ia);
            order_.erase(where_[static_cast<std::size_t>(c.right)]);
            if (before != order_.end()) maybe_schedule(before);
        }
    }

    void build_trace() {
        trace_.points.push_back({0.0, 0.0});
        std::size_t k = 1;
        for (; k < layers_.size() && layers_[k].collided; ++k)
            trace_.points.push_back({layers_[k].phi, layers_[k].sigma});
        for (; k < layers_.size(); ++k)
            if (layers_[k].collided) ++trace_.detached_layers;
    }

    bool two_type_;
    RandomStream coin_;
    double now_ = 0.0;
    int minus_count_ = 0;
    std::vector<Live> live_;
    Order order_;
    std::vector<Order::iterator> where_;
    std::priority_queue<Collision, std::vector<Collision>, std::greater<>> queue_;
    std::vector<Layer> layers_;
};

HeightProfile evolve_png(const std::vector<Nucleation>& nucleations, double horizon) {
    require(horizon > 0.0, "evolve_png: horizon must be > 0");
    PngEngine e(horizon, false, 0);
    e.run(nucleations);
    return std::move(e.profile_);
}

TwoTypeRun evolve_two_type(const std::vector<Nucleation>& nucleations, double horizon,
                           std::uint64_t seed) {
    require(horizon > 0.0, "evolve_two_type: horizon must be > 0");
    PngEngine e(horizon, true, seed);
    e.run(nucleations);
    return {std::move(e.profile_), std::move(e.trace_)};
}

}  // namespace lpplab
