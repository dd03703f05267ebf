#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planar/dual.hpp"
#include "planar/expr.hpp"
#include "planar/geometry.hpp"
#include "planar/interval.hpp"

namespace planar {

enum class BuiltinField {
    LinearRotation,  // x' = -y,  y' = x
    CubicDamped,     // x' = y,   y' = -x - y^3
    BumpAnnulus,     // x' = y - x*a(r), y' = -x - y*a(r)
};

/// Shape of the bump profile a(r) = scale * exp(-sharpness/(r - r0)) for
/// r > r0, identically 0 for r <= r0. C-infinity, a > 0 and a' > 0 past r0.
struct AlphaShape {
    double scale = 1.0;
    double sharpness = 1.0;
    double r0 = 1.0;
};

/// Value and derivative of the bump profile at r >= 0. Rejects r < 0.
std::pair<double, double> alpha_bump(double r, const AlphaShape& shape);

/// Sound enclosures of a and a' over an interval of radii. a is monotone and
/// a' unimodal (peak at r0 + sharpness/2), so endpoint plus peak evaluation
/// gives tight bounds.
std::pair<Interval, Interval> alpha_bump_range(Interval r, const AlphaShape& shape);

/// A planar vector field (P,Q): either one of the built-in example systems
/// or a pair of parsed expressions. Move-only; use clone() to copy.
class FieldDef {
public:
    static FieldDef builtin(BuiltinField id);
    static FieldDef builtin(BuiltinField id, const std::map<std::string, double>& overrides);
    static FieldDef from_expressions(const std::string& name, ExprPtr p, ExprPtr q,
                                     std::vector<std::string> param_names,
                                     std::vector<double> param_values, bool analytic);

    FieldDef(FieldDef&&) = default;
    FieldDef& operator=(FieldDef&&) = default;
    FieldDef clone() const;

    const std::string& name() const { return name_; }
    bool analytic() const { return analytic_; }
    void set_analytic(bool value) { analytic_ = value; }
    void set_name(std::string name) { name_ = std::move(name); }

    bool is_builtin() const { return builtin_.has_value(); }
    BuiltinField builtin_id() const;

    const std::vector<std::string>& param_names() const { return param_names_; }
    const std::vector<double>& param_values() const { return param_values_; }
    double param(const std::string& name) const;
    void set_param(const std::string& name, double value);

    /// Bump profile of a BUMP_ANNULUS field (throws for other fields).
    AlphaShape alpha_shape() const;

    const ExprAst& p_expr() const;
    const ExprAst& q_expr() const;

    /// Core evaluator over double or Dual2<double> (and, for polynomial
    /// sources, interval scalars). BUMP_ANNULUS branches on the point's
    /// radius, so interval types must go through interval_jet instead.
    template <class T>
    void velocity(const T& x, const T& y, T& p, T& q) const;

private:
    FieldDef() = default;

    void validate_params() const;

    std::string name_;
    std::optional<BuiltinField> builtin_;
    ExprPtr p_expr_;
    ExprPtr q_expr_;
    std::vector<std::string> param_names_;
    std::vector<double> param_values_;
    bool analytic_ = false;
};

/// Pointwise first-order data of the field at one point.
struct JetSample {
    Vec2 point;
    Vec2 value;                            // (P, Q)
    std::array<std::array<double, 2>, 2> jac;  // [[P_x, P_y], [Q_x, Q_y]]
    double trace = 0.0;                    // P_x + Q_y
    double det = 0.0;                      // P_x Q_y - P_y Q_x
    std::pair<double, double> eig_re;      // real parts, ascending
};

/// Interval enclosure of the same data over a box.
struct IntervalJet {
    Rect box;
    Interval p;
    Interval q;
    std::array<std::array<Interval, 2>, 2> jac;
    Interval trace;
    Interval det;
};

/// Parses `P = <expr> ; Q = <expr>` (';' or newline separated, both
/// statements required exactly once) against the given parameter table.
FieldDef parse_field(const std::string& src, const std::map<std::string, double>& params);

/// (P,Q) at a point. Throws EvalError on non-finite results.
Vec2 eval_velocity(const FieldDef& field, Vec2 point);

/// Value, Jacobian, trace, determinant, and eigenvalue real parts at a
/// point, via forward-mode dual numbers. Throws EvalError on non-finite
/// derivatives.
JetSample jet(const FieldDef& field, Vec2 point);

/// Real parts of the eigenvalues of a 2x2 matrix with the given trace and
/// determinant, ascending. Complex pair yields (T/2, T/2).
std::pair<double, double> eigen_real_parts(double trace, double det);

/// Sound interval enclosures of P, Q, Jacobian, trace, and determinant over
/// the box. Throws EnclosureError when the box must be split (interval
/// division by zero; BUMP_ANNULUS box touching the origin while meeting the
/// bump region).
IntervalJet interval_jet(const FieldDef& field, const Rect& box);

namespace detail {

inline double value_of(double v) { return v; }
inline double value_of(const Dual2<double>& v) { return v.v; }

template <class T>
inline constexpr bool pointwise_scalar_v = false;
template <>
inline constexpr bool pointwise_scalar_v<double> = true;
template <>
inline constexpr bool pointwise_scalar_v<Dual2<double>> = true;

inline double apply_alpha(double r, const AlphaShape& shape) {
    return alpha_bump(r, shape).first;
}

inline Dual2<double> apply_alpha(const Dual2<double>& r, const AlphaShape& shape) {
    auto [a, ap] = alpha_bump(r.v, shape);
    return {a, ap * r.dx, ap * r.dy};
}

}  // namespace detail

template <class T>
void FieldDef::velocity(const T& x, const T& y, T& p, T& q) const {
    if (!builtin_) {
        p = expr_eval(*p_expr_, x, y, param_values_);
        q = expr_eval(*q_expr_, x, y, param_values_);
        return;
    }
    switch (*builtin_) {
        case BuiltinField::LinearRotation:
            p = -y;
            q = x;
            return;
        case BuiltinField::CubicDamped:
            p = y;
            q = -x - pow_int(y, 3);
            return;
        case BuiltinField::BumpAnnulus:
            if constexpr (detail::pointwise_scalar_v<T>) {
                using std::sqrt;
                AlphaShape shape{param_values_[0], param_values_[1], param_values_[2]};
                T r2 = x * x + y * y;
                if (detail::value_of(r2) <= shape.r0 * shape.r0) {
                    p = y;
                    q = -x;
                    return;
                }
                T a = detail::apply_alpha(sqrt(r2), shape);
                p = y - x * a;
                q = -x - y * a;
                return;
            } else {
                throw Error("BUMP_ANNULUS interval evaluation goes through interval_jet");
            }
    }
    throw Error("corrupt field definition");
}

}  // namespace planar
