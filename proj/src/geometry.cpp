#include "lpplab/geometry.hpp"

#include <cmath>

#include "lpplab/error.hpp"

namespace lpplab {

PlanarPoint unrotate(const RotatedPoint& q) {
    require(std::abs(q.z) <= q.s, "unrotate: point outside the light cone |z| <= s");
    return {(q.s + q.z) * kInvSqrt2, (q.s - q.z) * kInvSqrt2};
}

}  // namespace lpplab
