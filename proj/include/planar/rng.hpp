#pragma once

#include <cstdint>
#include <random>

#include "planar/geometry.hpp"

namespace planar {

/// Deterministic uniform doubles. The bits-to-double conversion is written
/// out so identical seeds give identical streams on every platform and
/// standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double unit() { return double(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    Vec2 point(const Rect& r) {
        double x = uniform(r.xmin, r.xmax);
        double y = uniform(r.ymin, r.ymax);
        return {x, y};
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace planar
