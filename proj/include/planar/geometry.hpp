#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace planar {

/// Error hierarchy for the toolkit. Everything we throw derives from this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation produced a non-finite value (overflow, domain error).
class EvalError : public Error {
public:
    using Error::Error;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }

    /// Rotation by +90 degrees.
    Vec2 perp() const { return {-y, x}; }
    Vec2 normalized() const {
        double n = norm();
        if (n == 0.0) throw Error("cannot normalize zero vector");
        return {x / n, y / n};
    }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

/// Axis-aligned rectangle. Doubles as the verification Region.
struct Rect {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;

    Rect() = default;
    Rect(double x0, double x1, double y0, double y1)
        : xmin(x0), xmax(x1), ymin(y0), ymax(y1) {
        if (!(xmin < xmax) || !(ymin < ymax))
            throw Error("rectangle requires xmin<xmax and ymin<ymax");
        if (!std::isfinite(xmin) || !std::isfinite(xmax) ||
            !std::isfinite(ymin) || !std::isfinite(ymax))
            throw Error("rectangle bounds must be finite");
    }

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double area() const { return width() * height(); }
    Vec2 center() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }

    bool contains(Vec2 p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }

    /// Squared distance from p to this rectangle (0 if inside).
    double dist2(Vec2 p) const {
        double dx = p.x < xmin ? xmin - p.x : (p.x > xmax ? p.x - xmax : 0.0);
        double dy = p.y < ymin ? ymin - p.y : (p.y > ymax ? p.y - ymax : 0.0);
        return dx * dx + dy * dy;
    }
};

/// Simple closed polygon, stored counterclockwise (signed area > 0).
/// Construction reverses clockwise input and rejects degenerate rings.
class Polygon {
public:
    explicit Polygon(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {
        if (verts_.size() < 3) throw Error("polygon needs at least 3 vertices");
        for (const Vec2& v : verts_)
            if (!v.finite()) throw Error("polygon vertex not finite");
        double a = shoelace(verts_);
        if (a == 0.0) throw Error("polygon has zero signed area");
        if (a < 0.0) std::reverse(verts_.begin(), verts_.end());
    }

    const std::vector<Vec2>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }

    double area() const { return shoelace(verts_); }

    Vec2 centroid() const {
        // Area-weighted centroid of the enclosed region.
        double a = 0.0, cx = 0.0, cy = 0.0;
        const std::size_t n = verts_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& p = verts_[i];
            const Vec2& q = verts_[(i + 1) % n];
            double w = p.cross(q);
            a += w;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        a *= 0.5;
        return {cx / (6.0 * a), cy / (6.0 * a)};
    }

    /// Insert extra vertices along edges until at least `min_vertices` total.
    /// Geometry is unchanged (new vertices are collinear on existing edges).
    Polygon densified(std::size_t min_vertices) const {
        if (verts_.size() >= min_vertices) return *this;
        std::size_t per_edge = (min_vertices + verts_.size() - 1) / verts_.size();
        std::vector<Vec2> out;
        out.reserve(verts_.size() * per_edge);
        const std::size_t n = verts_.size();
        for (std::size_t i = 0; i < n; ++i) {
            Vec2 p = verts_[i], q = verts_[(i + 1) % n];
            for (std::size_t k = 0; k < per_edge; ++k) {
                double t = double(k) / double(per_edge);
                out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
            }
        }
        return Polygon(std::move(out));
    }

    /// O(n^2) simplicity check, for input validation and tests.
    bool is_simple() const;

    /// Shoelace signed area of a raw ring.
    static double shoelace(const std::vector<Vec2>& v) {
        double s = 0.0;
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i)
            s += v[i].cross(v[(i + 1) % n]);
        return 0.5 * s;
    }

    /// Regular n-gon approximation of a circle.
    static Polygon circle(Vec2 center, double radius, std::size_t n);

private:
    std::vector<Vec2> verts_;
};

}  // namespace planar
