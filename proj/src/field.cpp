#include "planar/field.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace planar {

namespace {

void validate_shape(const AlphaShape& s) {
    if (!std::isfinite(s.scale) || s.scale <= 0.0)
        throw Error("alpha scale must be positive and finite");
    if (!std::isfinite(s.sharpness) || s.sharpness <= 0.0)
        throw Error("alpha sharpness must be positive and finite");
    if (!std::isfinite(s.r0) || s.r0 <= 0.0)
        throw Error("alpha r0 must be positive and finite");
    // keeps the deep-tail bound scale*e^-1418*1418^2/sharpness below denormal
    if (s.scale / s.sharpness > 1e100)
        throw Error("alpha scale/sharpness ratio too large");
}

}  // namespace

std::pair<double, double> alpha_bump(double r, const AlphaShape& shape) {
    validate_shape(shape);
    if (!(r >= 0.0)) throw Error("alpha_bump requires r >= 0");
    double d = r - shape.r0;
    if (d <= 0.0) return {0.0, 0.0};
    double u = shape.sharpness / d;
    if (u > 700.0) return {0.0, 0.0};  // below ~1e-304; see alpha_bump_range
    double a = shape.scale * std::exp(-u);
    double ap = a * shape.sharpness / (d * d);
    return {a, ap};
}

std::pair<Interval, Interval> alpha_bump_range(Interval r, const AlphaShape& shape) {
    validate_shape(shape);
    if (r.lo < 0.0) throw Error("alpha_bump_range requires r >= 0");
    const double s = shape.sharpness;
    Interval d = r - Interval(shape.r0);
    if (d.hi <= 0.0) return {Interval(0.0), Interval(0.0)};
    double dl = std::max(d.lo, 0.0);
    double dh = d.hi;
    const double denorm = std::numeric_limits<double>::denorm_min();

    // Point enclosures of a(d) and a'(d) at exact double offsets d > 0.
    // For u = s/d >= 1418, a <= scale*e^-1418 and a' <= scale*e^-1418*u^2/s,
    // both below the smallest denormal for any permitted shape.
    auto a_at = [&](double dv) -> Interval {
        if (dv * 1418.0 < s) return Interval(0.0, denorm);
        Interval u = Interval(s) / Interval(dv);
        return Interval(shape.scale) * exp(-u);
    };
    auto ap_at = [&](double dv) -> Interval {
        if (dv * 1418.0 < s) return Interval(0.0, denorm);
        Interval dd(dv);
        Interval u = Interval(s) / dd;
        Interval a = Interval(shape.scale) * exp(-u);
        return a * (Interval(s) / pow_int(dd, 2));
    };

    // a is increasing in d, so endpoint values bound it.
    double a_lo = (dl == 0.0) ? 0.0 : std::max(0.0, a_at(dl).lo);
    double a_hi = a_at(dh).hi;
    Interval a_range(a_lo, std::max(a_lo, a_hi));

    // a' is unimodal with its peak at d = s/2: minimum at an endpoint,
    // maximum at an endpoint or the peak.
    Interval c_lo = (dl == 0.0) ? Interval(0.0) : ap_at(dl);
    Interval c_hi = ap_at(dh);
    double ap_hi = std::max(c_lo.hi, c_hi.hi);
    double peak = 0.5 * s;
    if (dl < peak && peak < dh) ap_hi = std::max(ap_hi, ap_at(peak).hi);
    double ap_lo = (dl == 0.0) ? 0.0 : std::max(0.0, std::min(c_lo.lo, c_hi.lo));
    return {a_range, Interval(ap_lo, std::max(ap_lo, ap_hi))};
}

FieldDef FieldDef::builtin(BuiltinField id) { return builtin(id, {}); }

FieldDef FieldDef::builtin(BuiltinField id, const std::map<std::string, double>& overrides) {
    FieldDef f;
    f.builtin_ = id;
    switch (id) {
        case BuiltinField::LinearRotation:
            f.name_ = "LINEAR_ROTATION";
            f.analytic_ = true;
            break;
        case BuiltinField::CubicDamped:
            f.name_ = "CUBIC_DAMPED";
            f.analytic_ = true;
            break;
        case BuiltinField::BumpAnnulus:
            f.name_ = "BUMP_ANNULUS";
            f.analytic_ = false;
            f.param_names_ = {"scale", "sharpness", "r0"};
            f.param_values_ = {1.0, 0.01, 1.0};
            break;
    }
    for (const auto& [k, v] : overrides) f.set_param(k, v);
    f.validate_params();
    return f;
}

FieldDef FieldDef::from_expressions(const std::string& name, ExprPtr p, ExprPtr q,
                                    std::vector<std::string> param_names,
                                    std::vector<double> param_values, bool analytic) {
    if (!p || !q) throw Error("field needs both P and Q expressions");
    if (param_names.size() != param_values.size())
        throw Error("parameter name/value tables differ in length");
    expr_validate(*p, param_names.size());
    expr_validate(*q, param_names.size());
    FieldDef f;
    f.name_ = name;
    f.p_expr_ = std::move(p);
    f.q_expr_ = std::move(q);
    f.param_names_ = std::move(param_names);
    f.param_values_ = std::move(param_values);
    f.analytic_ = analytic;
    f.validate_params();
    return f;
}

FieldDef FieldDef::clone() const {
    FieldDef f;
    f.name_ = name_;
    f.builtin_ = builtin_;
    if (p_expr_) f.p_expr_ = expr_clone(*p_expr_);
    if (q_expr_) f.q_expr_ = expr_clone(*q_expr_);
    f.param_names_ = param_names_;
    f.param_values_ = param_values_;
    f.analytic_ = analytic_;
    return f;
}

BuiltinField FieldDef::builtin_id() const {
    if (!builtin_) throw Error("field '" + name_ + "' is not a builtin");
    return *builtin_;
}

double FieldDef::param(const std::string& name) const {
    for (std::size_t i = 0; i < param_names_.size(); ++i)
        if (param_names_[i] == name) return param_values_[i];
    throw Error("unknown parameter '" + name + "'");
}

void FieldDef::set_param(const std::string& name, double value) {
    for (std::size_t i = 0; i < param_names_.size(); ++i)
        if (param_names_[i] == name) {
            param_values_[i] = value;
            validate_params();
            return;
        }
    throw Error("unknown parameter '" + name + "'");
}

AlphaShape FieldDef::alpha_shape() const {
    if (!builtin_ || *builtin_ != BuiltinField::BumpAnnulus)
        throw Error("field '" + name_ + "' has no bump profile");
    return AlphaShape{param_values_[0], param_values_[1], param_values_[2]};
}

const ExprAst& FieldDef::p_expr() const {
    if (!p_expr_) throw Error("builtin field has no P expression");
    return *p_expr_;
}

const ExprAst& FieldDef::q_expr() const {
    if (!q_expr_) throw Error("builtin field has no Q expression");
    return *q_expr_;
}

void FieldDef::validate_params() const {
    for (double v : param_values_)
        if (!std::isfinite(v)) throw Error("field parameter is not finite");
    if (builtin_ && *builtin_ == BuiltinField::BumpAnnulus) {
        AlphaShape s{param_values_[0], param_values_[1], param_values_[2]};
        validate_shape(s);
        if (s.r0 < 1.0) throw Error("BUMP_ANNULUS requires r0 >= 1");
    }
}

FieldDef parse_field(const std::string& src, const std::map<std::string, double>& params) {
    std::vector<std::string> names;
    std::vector<double> values;
    names.reserve(params.size());
    values.reserve(params.size());
    for (const auto& [k, v] : params) {
        names.push_back(k);
        values.push_back(v);
    }

    ExprPtr p, q;
    std::size_t i = 0;
    const std::size_t n = src.size();
    while (i < n) {
        std::size_t end = src.find_first_of(";\n", i);
        if (end == std::string::npos) end = n;
        std::size_t a = i;
        while (a < end && std::isspace(static_cast<unsigned char>(src[a]))) ++a;
        if (a == end) {
            i = end + 1;
            continue;
        }
        char which = src[a];
        if (which != 'P' && which != 'Q')
            throw ParseError("expected 'P =' or 'Q ='", a);
        std::size_t b = a + 1;
        while (b < end && std::isspace(static_cast<unsigned char>(src[b]))) ++b;
        if (b >= end || src[b] != '=')
            throw ParseError(std::string("expected '=' after '") + which + "'", b);
        ++b;
        ExprPtr e = parse_expression(src.substr(b, end - b), names, b);
        ExprPtr& slot = (which == 'P') ? p : q;
        if (slot)
            throw ParseError(std::string("duplicate definition of '") + which + "'", a);
        slot = std::move(e);
        i = end + 1;
    }
    if (!p) throw ParseError("missing 'P =' statement", n);
    if (!q) throw ParseError("missing 'Q =' statement", n);
    return FieldDef::from_expressions("custom", std::move(p), std::move(q),
                                      std::move(names), std::move(values), false);
}

namespace {

std::string point_str(Vec2 p) {
    std::ostringstream os;
    os << "(" << p.x << ", " << p.y << ")";
    return os.str();
}

}  // namespace

Vec2 eval_velocity(const FieldDef& field, Vec2 point) {
    if (!point.finite()) throw EvalError("eval_velocity at non-finite point");
    double p = 0.0, q = 0.0;
    field.velocity(point.x, point.y, p, q);
    if (!std::isfinite(p) || !std::isfinite(q))
        throw EvalError("non-finite velocity at " + point_str(point));
    return {p, q};
}

JetSample jet(const FieldDef& field, Vec2 point) {
    if (!point.finite()) throw EvalError("jet at non-finite point");
    auto x = Dual2<double>::var_x(point.x);
    auto y = Dual2<double>::var_y(point.y);
    Dual2<double> p, q;
    field.velocity(x, y, p, q);
    for (double v : {p.v, q.v, p.dx, p.dy, q.dx, q.dy})
        if (!std::isfinite(v))
            throw EvalError("non-finite jet at " + point_str(point));
    JetSample j;
    j.point = point;
    j.value = {p.v, q.v};
    j.jac = {{{p.dx, p.dy}, {q.dx, q.dy}}};
    j.trace = p.dx + q.dy;
    j.det = p.dx * q.dy - p.dy * q.dx;
    j.eig_re = eigen_real_parts(j.trace, j.det);
    return j;
}

std::pair<double, double> eigen_real_parts(double trace, double det) {
    double disc = trace * trace - 4.0 * det;
    if (disc < 0.0) return {0.5 * trace, 0.5 * trace};
    // Vieta for the small root avoids cancellation when |det| << trace^2.
    double s = std::sqrt(disc);
    double big = 0.5 * (trace + std::copysign(s, trace));
    if (big == 0.0) return {0.0, 0.0};
    double small = det / big;
    return {std::min(big, small), std::max(big, small)};
}

namespace {

Interval pad2(Interval v) {
    using detail::down;
    using detail::up;
    return Interval(down(down(v.lo)), up(up(v.hi)));
}

// Enclosures for the bump field over a box, from closed forms in r. The
// trace interval stays unpadded: its upper endpoint is exactly 0 whenever
// the box meets the flat region, which the certification step relies on.
IntervalJet bump_interval_jet(const FieldDef& field, const Rect& box) {
    AlphaShape shape = field.alpha_shape();
    Interval ix(box.xmin, box.xmax), iy(box.ymin, box.ymax);
    Interval r2 = pow_int(ix, 2) + pow_int(iy, 2);
    Interval r = sqrt(r2);
    auto [a, ap] = alpha_bump_range(r, shape);

    IntervalJet ij;
    ij.box = box;
    if (a.hi == 0.0 && ap.hi == 0.0) {
        ij.p = iy;
        ij.q = -ix;
        ij.jac = {{{Interval(0.0), Interval(1.0)}, {Interval(-1.0), Interval(0.0)}}};
        ij.trace = Interval(0.0);
        ij.det = Interval(1.0);
        return ij;
    }
    if (r.lo <= 0.0)
        throw EnclosureError("bump box touches the origin; split it");

    Interval xx = pow_int(ix, 2) / r;
    Interval yy = pow_int(iy, 2) / r;
    Interval xy = (ix * iy) / r;
    ij.p = pad2(iy - ix * a);
    ij.q = pad2(-(ix + iy * a));
    ij.jac = {{{pad2(-(a + xx * ap)), pad2(1.0 - xy * ap)},
               {pad2(-1.0 - xy * ap), pad2(-(a + yy * ap))}}};
    ij.trace = -(2.0 * a + r * ap);
    ij.det = pad2(1.0 + pow_int(a, 2) + r * a * ap);
    return ij;
}

}  // namespace

IntervalJet interval_jet(const FieldDef& field, const Rect& box) {
    if (field.is_builtin() && field.builtin_id() == BuiltinField::BumpAnnulus)
        return bump_interval_jet(field, box);
    auto x = Dual2<Interval>::var_x(Interval(box.xmin, box.xmax));
    auto y = Dual2<Interval>::var_y(Interval(box.ymin, box.ymax));
    Dual2<Interval> p, q;
    field.velocity(x, y, p, q);
    IntervalJet ij;
    ij.box = box;
    ij.p = p.v;
    ij.q = q.v;
    ij.jac = {{{p.dx, p.dy}, {q.dx, q.dy}}};
    ij.trace = p.dx + q.dy;
    ij.det = p.dx * q.dy - p.dy * q.dx;
    return ij;
}

}  // namespace planar
