#include "planar/geometry.hpp"

#include <numbers>

namespace planar {

namespace {

// Proper segment intersection test (shared endpoints of adjacent edges excluded
// by the caller).
bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
        double v = (q - p).cross(r - p);
        if (v > 0) return 1;
        if (v < 0) return -1;
        return 0;
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0)
        return true;
    return false;
}

}  // namespace

bool Polygon::is_simple() const {
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // Skip adjacent edges (they share an endpoint).
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_cross(verts_[i], verts_[(i + 1) % n],
                               verts_[j], verts_[(j + 1) % n]))
                return false;
        }
    }
    return true;
}

Polygon Polygon::circle(Vec2 center, double radius, std::size_t n) {
    if (n < 3) throw Error("circle polygon needs n >= 3");
    if (!(radius > 0)) throw Error("circle polygon needs radius > 0");
    std::vector<Vec2> v;
    v.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        double t = 2.0 * std::numbers::pi * double(k) / double(n);
        v.push_back({center.x + radius * std::cos(t),
                     center.y + radius * std::sin(t)});
    }
    return Polygon(std::move(v));
}

}  // namespace planar
