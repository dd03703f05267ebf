#pragma once

#include <cmath>

#include "planar/interval.hpp"

namespace planar {

/// Forward-mode dual number carrying a value and its partial derivatives with
/// respect to x and y. One evaluation of an expression with Dual2 seeds
/// yields (f, f_x, f_y) exact to roundoff. S = double gives pointwise jets;
/// S = Interval lifts the same chain rules over boxes.
template <class S>
struct Dual2 {
    S v{};   // value
    S dx{};  // d/dx
    S dy{};  // d/dy

    Dual2() = default;
    Dual2(S value) : v(value), dx(S(0.0)), dy(S(0.0)) {}
    Dual2(S value, S ddx, S ddy) : v(value), dx(ddx), dy(ddy) {}

    static Dual2 var_x(S value) { return {value, S(1.0), S(0.0)}; }
    static Dual2 var_y(S value) { return {value, S(0.0), S(1.0)}; }
};

template <class S>
Dual2<S> operator+(const Dual2<S>& a, const Dual2<S>& b) {
    return {a.v + b.v, a.dx + b.dx, a.dy + b.dy};
}

template <class S>
Dual2<S> operator-(const Dual2<S>& a, const Dual2<S>& b) {
    return {a.v - b.v, a.dx - b.dx, a.dy - b.dy};
}

template <class S>
Dual2<S> operator-(const Dual2<S>& a) {
    return {-a.v, -a.dx, -a.dy};
}

template <class S>
Dual2<S> operator*(const Dual2<S>& a, const Dual2<S>& b) {
    return {a.v * b.v, a.dx * b.v + a.v * b.dx, a.dy * b.v + a.v * b.dy};
}

template <class S>
Dual2<S> operator/(const Dual2<S>& a, const Dual2<S>& b) {
    S q = a.v / b.v;
    return {q, (a.dx - q * b.dx) / b.v, (a.dy - q * b.dy) / b.v};
}

/// Integer power of a plain double by repeated squaring.
inline double pow_int(double v, int n) {
    double r = 1.0, b = v;
    while (n > 0) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n > 0) b *= b;
    }
    return r;
}

template <class S>
Dual2<S> sin(const Dual2<S>& a) {
    using std::cos;
    using std::sin;
    S c = cos(a.v);
    return {sin(a.v), c * a.dx, c * a.dy};
}

template <class S>
Dual2<S> cos(const Dual2<S>& a) {
    using std::cos;
    using std::sin;
    S ms = -sin(a.v);
    return {cos(a.v), ms * a.dx, ms * a.dy};
}

template <class S>
Dual2<S> exp(const Dual2<S>& a) {
    using std::exp;
    S e = exp(a.v);
    return {e, e * a.dx, e * a.dy};
}

template <class S>
Dual2<S> sqrt(const Dual2<S>& a) {
    using std::sqrt;
    S r = sqrt(a.v);
    S half = S(0.5) / r;
    return {r, half * a.dx, half * a.dy};
}

template <class S>
Dual2<S> pow_int(const Dual2<S>& a, int n) {
    if (n == 0) return Dual2<S>(S(1.0));
    if (n == 1) return a;
    S vp = pow_int(a.v, n);
    S f = S(double(n)) * pow_int(a.v, n - 1);
    return {vp, f * a.dx, f * a.dy};
}

}  // namespace planar
