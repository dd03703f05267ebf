#pragma once

#include <cmath>
#include <limits>

#include "planar/geometry.hpp"

namespace planar {

/// Interval operation cannot produce a sound enclosure (division by an
/// interval containing zero, sqrt of a negative range, non-finite bounds).
/// Branch-and-bound callers respond by splitting the box.
class EnclosureError : public Error {
public:
    using Error::Error;
};

/// Closed interval [lo, hi] with outward rounding after every arithmetic
/// operation, so enclosures stay sound under double roundoff. Not a general
/// interval library — exactly the operations the expression language and the
/// built-in fields need.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double v) : lo(v), hi(v) {}
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(l <= h)) throw EnclosureError("interval bounds out of order");
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double v) const { return v >= lo && v <= hi; }
    bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
    double mag() const { return std::max(std::abs(lo), std::abs(hi)); }
};

namespace detail {

inline double down(double v) {
    return std::nextafter(v, -std::numeric_limits<double>::infinity());
}
inline double up(double v) {
    return std::nextafter(v, std::numeric_limits<double>::infinity());
}

inline Interval outward(double lo, double hi) {
    lo = down(lo);
    hi = up(hi);
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw EnclosureError("interval bound overflowed");
    return Interval(lo, hi);
}

inline Interval checked(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw EnclosureError("interval bound overflowed");
    return Interval(lo, hi);
}

// Knuth TwoSum residual: zero iff s = a + b exactly. Exact endpoints skip
// the outward nudge, so integer-coefficient polynomials keep exact bounds.
inline bool sum_exact(double a, double b, double s) {
    double ap = s - b;
    double bp = s - ap;
    double da = a - ap;
    double db = b - bp;
    return (da + db) == 0.0;
}

// Product exactness via fma residual. The residual of a normal product is
// exactly representable; subnormal products always take the nudge.
inline bool prod_exact(double a, double b, double p) {
    if (std::fma(a, b, -p) != 0.0) return false;
    return a == 0.0 || b == 0.0 || std::abs(p) >= std::numeric_limits<double>::min();
}

inline bool quot_exact(double a, double b, double q) {
    if (std::fma(q, b, -a) != 0.0) return false;
    return a == 0.0 || std::abs(q) >= std::numeric_limits<double>::min();
}

}  // namespace detail

inline Interval operator+(Interval a, Interval b) {
    double lo = a.lo + b.lo, hi = a.hi + b.hi;
    if (!detail::sum_exact(a.lo, b.lo, lo)) lo = detail::down(lo);
    if (!detail::sum_exact(a.hi, b.hi, hi)) hi = detail::up(hi);
    return detail::checked(lo, hi);
}

inline Interval operator-(Interval a, Interval b) {
    double lo = a.lo - b.hi, hi = a.hi - b.lo;
    if (!detail::sum_exact(a.lo, -b.hi, lo)) lo = detail::down(lo);
    if (!detail::sum_exact(a.hi, -b.lo, hi)) hi = detail::up(hi);
    return detail::checked(lo, hi);
}

inline Interval operator-(Interval a) { return Interval(-a.hi, -a.lo); }

inline Interval operator*(Interval a, Interval b) {
    double xs[2] = {a.lo, a.hi}, ys[2] = {b.lo, b.hi};
    double lo = 0.0, hi = 0.0, lo_x = 0.0, lo_y = 0.0, hi_x = 0.0, hi_y = 0.0;
    bool first = true;
    for (double x : xs)
        for (double y : ys) {
            double p = x * y;
            if (first || p < lo) { lo = p; lo_x = x; lo_y = y; }
            if (first || p > hi) { hi = p; hi_x = x; hi_y = y; }
            first = false;
        }
    if (!detail::prod_exact(lo_x, lo_y, lo)) lo = detail::down(lo);
    if (!detail::prod_exact(hi_x, hi_y, hi)) hi = detail::up(hi);
    return detail::checked(lo, hi);
}

inline Interval operator/(Interval a, Interval b) {
    if (b.contains_zero())
        throw EnclosureError("division by interval containing zero");
    double xs[2] = {a.lo, a.hi}, ys[2] = {b.lo, b.hi};
    double lo = 0.0, hi = 0.0, lo_x = 0.0, lo_y = 0.0, hi_x = 0.0, hi_y = 0.0;
    bool first = true;
    for (double x : xs)
        for (double y : ys) {
            double q = x / y;
            if (first || q < lo) { lo = q; lo_x = x; lo_y = y; }
            if (first || q > hi) { hi = q; hi_x = x; hi_y = y; }
            first = false;
        }
    if (!detail::quot_exact(lo_x, lo_y, lo)) lo = detail::down(lo);
    if (!detail::quot_exact(hi_x, hi_y, hi)) hi = detail::up(hi);
    return detail::checked(lo, hi);
}

inline Interval operator+(Interval a, double b) { return a + Interval(b); }
inline Interval operator+(double a, Interval b) { return Interval(a) + b; }
inline Interval operator-(Interval a, double b) { return a - Interval(b); }
inline Interval operator-(double a, Interval b) { return Interval(a) - b; }
inline Interval operator*(Interval a, double b) { return a * Interval(b); }
inline Interval operator*(double a, Interval b) { return Interval(a) * b; }
inline Interval operator/(Interval a, double b) { return a / Interval(b); }
inline Interval operator/(double a, Interval b) { return Interval(a) / b; }

/// Integer power. Even exponents go through the magnitude interval (tight
/// across zero); odd exponents use a^n = a * (a^2)^((n-1)/2) so every step is
/// an outward-rounded interval multiply.
inline Interval pow_int(Interval a, int n) {
    if (n < 0) throw EnclosureError("pow_int exponent must be non-negative");
    if (n == 0) return Interval(1.0);
    if (n == 1) return a;
    if (n % 2 == 0) {
        double m_hi = a.mag();
        double m_lo = a.contains_zero() ? 0.0
                                        : std::min(std::abs(a.lo), std::abs(a.hi));
        Interval r(1.0);
        Interval b(m_lo, m_hi);
        int e = n;
        while (e > 0) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e > 0) b = b * b;
        }
        return Interval(std::max(0.0, r.lo), r.hi);
    }
    return a * pow_int(a, n - 1);
}

inline Interval sqrt(Interval a) {
    if (a.lo < 0.0) {
        if (a.hi < 0.0) throw EnclosureError("sqrt of negative interval");
        a.lo = 0.0;  // clip roundoff-negative lower bounds of squares
    }
    Interval r = detail::outward(std::sqrt(a.lo), std::sqrt(a.hi));
    if (r.lo < 0.0) r.lo = 0.0;
    return r;
}

inline Interval exp(Interval a) {
    // pad 2 ulps: libm exp is not guaranteed correctly rounded
    Interval e = detail::outward(detail::down(std::exp(a.lo)), detail::up(std::exp(a.hi)));
    if (e.lo < 0.0) e.lo = 0.0;
    return e;
}

namespace detail {

// sin/cos enclosures: evaluate endpoints (padded 2 ulps for libm slop) and
// widen to +-1 where the interval covers an extremum.
inline Interval trig_envelope(double flo, double fhi, bool hits_max, bool hits_min) {
    double lo = std::min(flo, fhi), hi = std::max(flo, fhi);
    lo = down(down(lo));
    hi = up(up(hi));
    if (hits_max) hi = 1.0;
    if (hits_min) lo = -1.0;
    return Interval(std::max(lo, -1.0), std::min(hi, 1.0));
}

}  // namespace detail

inline Interval sin(Interval a) {
    constexpr double pi = 3.14159265358979323846;
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi))
        throw EnclosureError("sin of non-finite interval");
    if (a.width() >= 2.0 * pi) return Interval(-1.0, 1.0);
    // sin has max at pi/2 + 2k*pi, min at -pi/2 + 2k*pi.
    auto covers = [&](double phase) {
        double k = std::ceil((a.lo - phase) / (2.0 * pi));
        return phase + 2.0 * pi * k <= a.hi;
    };
    return detail::trig_envelope(std::sin(a.lo), std::sin(a.hi),
                                 covers(pi / 2.0), covers(-pi / 2.0));
}

inline Interval cos(Interval a) {
    constexpr double pi = 3.14159265358979323846;
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi))
        throw EnclosureError("cos of non-finite interval");
    if (a.width() >= 2.0 * pi) return Interval(-1.0, 1.0);
    auto covers = [&](double phase) {
        double k = std::ceil((a.lo - phase) / (2.0 * pi));
        return phase + 2.0 * pi * k <= a.hi;
    };
    return detail::trig_envelope(std::cos(a.lo), std::cos(a.hi),
                                 covers(0.0), covers(pi));
}

inline Interval hull(Interval a, Interval b) {
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

}  // namespace planar
