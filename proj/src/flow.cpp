#include "planar/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace planar {

const char* to_string(FlowStatus s) {
    switch (s) {
        case FlowStatus::Completed: return "COMPLETED";
        case FlowStatus::Event: return "EVENT";
        case FlowStatus::StepLimit: return "STEP_LIMIT";
        case FlowStatus::Blowup: return "BLOWUP";
        case FlowStatus::NotFound: return "NOT_FOUND";
    }
    return "?";
}

Vec2 Trajectory::state_at(double t) const {
    if (steps.empty() || t <= times.front()) return states.front();
    if (t >= times.back()) return states.back();
    std::size_t lo = 0, hi = steps.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        if (steps[mid].t0 <= t)
            lo = mid;
        else
            hi = mid - 1;
    }
    return steps[lo].eval(t);
}

namespace {

constexpr double kBlowupNorm = 1e8;

// Dormand-Prince 5(4) tableau, FSAL.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct StageResult {
    Vec2 y1;
    Vec2 k7;
    DenseStep dense;
    double err = 0.0;
};

void validate(const IntegratorConfig& cfg) {
    if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0))
        throw Error("integrator tolerances must be positive");
    if (!(cfg.h_init > 0.0) || !(cfg.h_max > 0.0) || cfg.h_init > cfg.h_max)
        throw Error("integrator requires 0 < h_init <= h_max");
    if (cfg.max_steps < 1) throw Error("integrator requires max_steps >= 1");
}

template <class RHS>
StageResult attempt_step(RHS&& f, double t, Vec2 y, Vec2 k1, double h,
                         const IntegratorConfig& cfg) {
    Vec2 k2 = f(y + h * (a21 * k1));
    Vec2 k3 = f(y + h * (a31 * k1 + a32 * k2));
    Vec2 k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    Vec2 k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    Vec2 k6 = f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));

    StageResult out;
    out.y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    out.k7 = f(out.y1);

    Vec2 ev = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * out.k7);
    double sx = cfg.atol + cfg.rtol * std::max(std::abs(y.x), std::abs(out.y1.x));
    double sy = cfg.atol + cfg.rtol * std::max(std::abs(y.y), std::abs(out.y1.y));
    out.err = std::sqrt(0.5 * ((ev.x / sx) * (ev.x / sx) + (ev.y / sy) * (ev.y / sy)));

    Vec2 ydiff = out.y1 - y;
    Vec2 bspl = h * k1 - ydiff;
    out.dense.t0 = t;
    out.dense.h = h;
    out.dense.c1 = y;
    out.dense.c2 = ydiff;
    out.dense.c3 = bspl;
    out.dense.c4 = ydiff - h * out.k7 - bspl;
    out.dense.c5 =
        h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * out.k7);
    return out;
}

// StepSink: called once per accepted step; returning true stops integration
// early with status Event. retain=false keeps only the newest step, for
// callers that never interpolate backwards.
template <class RHS, class StepSink>
Trajectory integrate_core(RHS&& f, Vec2 x0, double t_end, const IntegratorConfig& cfg,
                          StepSink&& on_step, bool retain = true) {
    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);
    if (!x0.finite() || x0.norm() > kBlowupNorm) {
        traj.status = FlowStatus::Blowup;
        return traj;
    }

    double t = 0.0;
    Vec2 y = x0;
    Vec2 k1;
    try {
        k1 = f(y);
    } catch (const EvalError&) {
        traj.status = FlowStatus::Blowup;
        return traj;
    }

    double h = std::min({cfg.h_init, cfg.h_max, t_end});
    bool rejected = false;
    long steps_taken = 0;

    while (t < t_end) {
        if (steps_taken >= cfg.max_steps) {
            traj.status = FlowStatus::StepLimit;
            return traj;
        }
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
            traj.status = FlowStatus::StepLimit;
            return traj;
        }
        bool last = false;
        if (t + h >= t_end) {
            h = t_end - t;
            last = true;
        }

        StageResult s;
        try {
            s = attempt_step(f, t, y, k1, h, cfg);
        } catch (const EvalError&) {
            traj.status = FlowStatus::Blowup;
            return traj;
        }
        ++steps_taken;

        if (s.err <= 1.0) {
            t = last ? t_end : t + h;
            y = s.y1;
            k1 = s.k7;
            traj.times.push_back(t);
            traj.states.push_back(y);
            traj.steps.push_back(s.dense);
            if (!retain && traj.steps.size() > 1) {
                traj.times.erase(traj.times.begin());
                traj.states.erase(traj.states.begin());
                traj.steps.erase(traj.steps.begin());
            }
            if (!y.finite() || y.norm() > kBlowupNorm) {
                traj.status = FlowStatus::Blowup;
                return traj;
            }
            if (on_step(traj)) {
                traj.status = FlowStatus::Event;
                return traj;
            }
            double fac = 0.9 * std::pow(std::max(s.err, 1e-10), -0.2);
            fac = std::clamp(fac, 0.2, rejected ? 1.0 : 5.0);
            h = std::min(h * fac, cfg.h_max);
            rejected = false;
        } else {
            double fac = std::clamp(0.9 * std::pow(s.err, -0.2), 0.1, 0.9);
            h *= fac;
            rejected = true;
        }
    }
    traj.status = FlowStatus::Completed;
    return traj;
}

struct FieldRhs {
    const FieldDef& field;
    double sign;
    Vec2 operator()(Vec2 y) const { return sign * eval_velocity(field, y); }
};

constexpr auto no_sink = [](const Trajectory&) { return false; };

}  // namespace

Trajectory integrate(const FieldDef& field, Vec2 x0, double t_end,
                     const IntegratorConfig& cfg) {
    validate(cfg);
    if (!(t_end > 0.0)) throw Error("integrate requires t_end > 0");
    return integrate_core(FieldRhs{field, 1.0}, x0, t_end, cfg, no_sink);
}

namespace {

// Event scan over one dense step: samples the event indicator, brackets a
// sign change, then bisects the dense output to 1e-10 in time.
class EventScanner {
public:
    EventScanner(const FieldDef& field, const Event& event)
        : field_(field), event_(event) {
        if (const auto* ray = std::get_if<RayCrossing>(&event_)) {
            double n = ray->dir.norm();
            if (n == 0.0 || !ray->dir.finite())
                throw Error("ray crossing needs a nonzero direction");
            dir_ = ray->dir / n;
            base_ = ray->base;
        }
        if (const auto* ball = std::get_if<EnterBall>(&event_))
            if (!(ball->rho > 0.0)) throw Error("enter-ball radius must be positive");
    }

    // Indicator whose zero is the event. Ray: signed distance off the ray
    // line. Ball and box indicators are negative strictly before the event
    // and >= 0 once it holds, so one crossing scan covers both.
    double indicator(Vec2 y) const {
        if (std::holds_alternative<RayCrossing>(event_)) return dir_.cross(y - base_);
        if (const auto* ball = std::get_if<EnterBall>(&event_))
            return ball->rho - (y - ball->center).norm();
        const auto& box = std::get<ExitBox>(event_).box;
        double gx = std::max(box.xmin - y.x, y.x - box.xmax);
        double gy = std::max(box.ymin - y.y, y.y - box.ymax);
        return std::max(gx, gy);
    }

    bool fires_immediately(Vec2 y) const {
        if (std::holds_alternative<RayCrossing>(event_)) return false;
        return indicator(y) >= 0.0;
    }

    // Returns true if the event occurs within this dense step; fills t/state.
    bool scan(const DenseStep& step, EventResult& out) const {
        const int n = 8;
        double ts[n + 1];
        double gs[n + 1];
        for (int i = 0; i <= n; ++i) {
            ts[i] = step.t0 + step.h * i / n;
            gs[i] = indicator(step.eval(ts[i]));
        }
        if (std::holds_alternative<RayCrossing>(event_)) {
            // strict sign changes only; zero samples extend the bracket
            int last = -1;
            for (int i = 0; i <= n; ++i) {
                if (gs[i] == 0.0) continue;
                if (last >= 0 && gs[last] * gs[i] < 0.0 &&
                    locate_ray(step, ts[last], gs[last], ts[i], gs[i], out))
                    return true;
                last = i;
            }
            return false;
        }
        for (int i = 0; i < n; ++i) {
            if (gs[i] < 0.0 && gs[i + 1] >= 0.0) {
                locate_threshold(step, ts[i], ts[i + 1], out);
                return true;
            }
        }
        return false;
    }

private:
    // Bisection on the crossing indicator; accepts only r > 0, transversal.
    bool locate_ray(const DenseStep& step, double ta, double ga, double tb, double gb,
                    EventResult& out) const {
        (void)gb;
        while (tb - ta > 1e-10) {
            double tm = 0.5 * (ta + tb);
            if (tm <= ta || tm >= tb) break;
            double gm = indicator(step.eval(tm));
            if (gm == 0.0 ? true : (ga * gm > 0.0)) {
                ta = tm;
                ga = gm;
            } else {
                tb = tm;
            }
        }
        double tstar = 0.5 * (ta + tb);
        if (tstar <= 1e-12) return false;  // the initial instant never counts
        Vec2 y = step.eval(tstar);
        double r = dir_.dot(y - base_);
        if (r <= 1e-12) return false;
        Vec2 v;
        try {
            v = eval_velocity(field_, y);
        } catch (const EvalError&) {
            return false;
        }
        if (std::abs(dir_.cross(v)) <= 1e-12 * (1.0 + v.norm())) return false;
        out.state = y;
        out.time = tstar;
        out.ray_r = r;
        out.status = FlowStatus::Event;
        return true;
    }

    // First crossing of indicator from < 0 to >= 0 inside [ta, tb].
    void locate_threshold(const DenseStep& step, double ta, double tb,
                          EventResult& out) const {
        while (tb - ta > 1e-10) {
            double tm = 0.5 * (ta + tb);
            if (tm <= ta || tm >= tb) break;
            if (indicator(step.eval(tm)) < 0.0)
                ta = tm;
            else
                tb = tm;
        }
        double tstar = 0.5 * (ta + tb);
        out.state = step.eval(tstar);
        out.time = tstar;
        out.status = FlowStatus::Event;
    }

    const FieldDef& field_;
    const Event& event_;
    Vec2 base_;
    Vec2 dir_;
};

}  // namespace

EventResult integrate_until_event(const FieldDef& field, Vec2 x0, const Event& event,
                                  const IntegratorConfig& cfg) {
    validate(cfg);
    EventScanner scanner(field, event);

    EventResult out;
    out.state = x0;
    if (scanner.fires_immediately(x0)) {
        out.status = FlowStatus::Event;
        return out;
    }

    // open-ended horizon: the step budget is the only bound
    const double horizon = std::numeric_limits<double>::max();
    auto sink = [&](const Trajectory& traj) {
        return scanner.scan(traj.steps.back(), out);
    };
    Trajectory traj =
        integrate_core(FieldRhs{field, 1.0}, x0, horizon, cfg, sink, false);

    if (traj.status == FlowStatus::Event) return out;
    out.state = traj.final_state();
    out.time = traj.t_final();
    out.status = traj.status == FlowStatus::Blowup ? FlowStatus::Blowup
                                                   : FlowStatus::NotFound;
    return out;
}

namespace {

Vec2 advance(const FieldDef& field, Vec2 v, double t, const IntegratorConfig& cfg) {
    Trajectory traj =
        integrate_core(FieldRhs{field, t < 0.0 ? -1.0 : 1.0}, v, std::abs(t), cfg,
                       no_sink, false);
    if (traj.status != FlowStatus::Completed)
        throw Error(std::string("transport aborted: vertex trajectory ") +
                    to_string(traj.status));
    return traj.final_state();
}

void refine_edge(const FieldDef& field, Vec2 sa, Vec2 ia, Vec2 sb, Vec2 ib,
                 double bound, int depth, double t, const IntegratorConfig& cfg,
                 std::vector<Vec2>& out) {
    if (depth >= 6 || (ib - ia).norm() <= bound) {
        out.push_back(ia);
        return;
    }
    Vec2 sm = 0.5 * (sa + sb);
    Vec2 im = advance(field, sm, t, cfg);
    refine_edge(field, sa, ia, sm, im, bound, depth + 1, t, cfg, out);
    refine_edge(field, sm, im, sb, ib, bound, depth + 1, t, cfg, out);
}

}  // namespace

Polygon transport_polygon(const FieldDef& field, const Polygon& poly, double t,
                          const IntegratorConfig& cfg) {
    validate(cfg);
    if (t == 0.0) return poly;

    const auto& src = poly.vertices();
    const std::size_t n = src.size();
    std::vector<Vec2> img(n);
    double max_spacing = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        img[i] = advance(field, src[i], t, cfg);
        max_spacing = std::max(max_spacing, (src[(i + 1) % n] - src[i]).norm());
    }
    double bound = std::max(2.0 * max_spacing, 1e-6);

    std::vector<Vec2> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        refine_edge(field, src[i], img[i], src[(i + 1) % n], img[(i + 1) % n], bound,
                    0, t, cfg, out);
    return Polygon(std::move(out));
}

namespace {

// Degree-5 rule on a triangle (7 points), exact through quintic integrands.
double rule7(const FieldDef& field, Vec2 a, Vec2 b, Vec2 c) {
    static const double sq15 = std::sqrt(15.0);
    const double w0 = 9.0 / 40.0;
    const double w1 = (155.0 - sq15) / 1200.0;
    const double w2 = (155.0 + sq15) / 1200.0;
    const double a1 = (6.0 - sq15) / 21.0;
    const double a2 = (6.0 + sq15) / 21.0;

    struct Node {
        double l1, l2, l3, w;
    };
    const Node nodes[7] = {
        {1.0 / 3, 1.0 / 3, 1.0 / 3, w0},
        {1.0 - 2 * a1, a1, a1, w1},
        {a1, 1.0 - 2 * a1, a1, w1},
        {a1, a1, 1.0 - 2 * a1, w1},
        {1.0 - 2 * a2, a2, a2, w2},
        {a2, 1.0 - 2 * a2, a2, w2},
        {a2, a2, 1.0 - 2 * a2, w2},
    };

    double signed_area = 0.5 * (b - a).cross(c - a);
    double sum = 0.0;
    for (const Node& nd : nodes) {
        Vec2 p = nd.l1 * a + nd.l2 * b + nd.l3 * c;
        sum += nd.w * jet(field, p).trace;
    }
    return signed_area * sum;
}

// Flux of the field through one edge of a positively-traversed boundary,
// by 7-point Gauss-Legendre. Exact whenever F restricted to the edge is
// polynomial of degree <= 13 in the edge parameter.
double edge_flux7(const FieldDef& field, Vec2 a, Vec2 b) {
    static const double gx[7] = {0.02544604382862074, 0.12923440720030277,
                                 0.29707742431130141, 0.5,
                                 0.70292257568869859, 0.87076559279969723,
                                 0.97455395617137926};
    static const double gw[7] = {0.06474248308443485, 0.13985269574463833,
                                 0.19091502525255947, 0.20897959183673470,
                                 0.19091502525255947, 0.13985269574463833,
                                 0.06474248308443485};
    Vec2 e = b - a;
    double sum = 0.0;
    for (int i = 0; i < 7; ++i) {
        Vec2 v = eval_velocity(field, a + gx[i] * e);
        sum += gw[i] * (v.x * e.y - v.y * e.x);
    }
    return sum;
}

// Integral of the trace over a signed triangle via the divergence theorem.
double tri_flux(const FieldDef& field, Vec2 a, Vec2 b, Vec2 c) {
    return edge_flux7(field, a, b) + edge_flux7(field, b, c) + edge_flux7(field, c, a);
}

// Adaptive subdivision around the fixed-order rule, with the boundary flux
// of the same triangle as the error reference. A sharp annulus profile
// concentrates the trace in a thin ring that slips between the interior
// stations of any single rule, and on the skinny self-similar fan slivers
// it can hide near the apex through every refinement level. The field
// itself jumps across the ring, so the flux sees that interior mass
// through edge values alone, and the two estimates disagree until the
// subdivision genuinely resolves the ring.
double triangle_trace_integral(const FieldDef& field, Vec2 a, Vec2 b, Vec2 c,
                               double tol, int depth) {
    double i7 = rule7(field, a, b, c);
    if (depth >= 14 || std::abs(i7 - tri_flux(field, a, b, c)) <= tol) return i7;
    Vec2 mab = 0.5 * (a + b), mbc = 0.5 * (b + c), mca = 0.5 * (c + a);
    double ct = 0.25 * tol;
    return triangle_trace_integral(field, a, mab, mca, ct, depth + 1) +
           triangle_trace_integral(field, mab, b, mbc, ct, depth + 1) +
           triangle_trace_integral(field, mca, mbc, c, ct, depth + 1) +
           triangle_trace_integral(field, mab, mbc, mca, ct, depth + 1);
}

}  // namespace

LiouvilleResult liouville_residual(const FieldDef& field, const Polygon& poly,
                                   const IntegratorConfig& cfg) {
    validate(cfg);
    const double h = 1e-3;
    Polygon dense = poly.densified(256);

    double a_plus = transport_polygon(field, dense, h, cfg).area();
    double a_minus = transport_polygon(field, dense, -h, cfg).area();

    LiouvilleResult out;
    out.dA_dt = (a_plus - a_minus) / (2.0 * h);

    // signed centroid fan covers any simple polygon exactly
    Vec2 c = dense.centroid();
    const auto& v = dense.vertices();
    double tri_tol = 1e-5 / static_cast<double>(v.size());
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        total += triangle_trace_integral(field, c, v[i], v[(i + 1) % v.size()], tri_tol, 0);
    out.integral_T = total;
    out.residual = std::abs(out.dA_dt - out.integral_T);
    return out;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,x,y\n";
    char line[96];
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", traj.times[i],
                      traj.states[i].x, traj.states[i].y);
        out += line;
    }
    return out;
}

std::string polygon_csv(const Polygon& poly) {
    std::string out = "x,y\n";
    char line[64];
    for (const Vec2& v : poly.vertices()) {
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", v.x, v.y);
        out += line;
    }
    return out;
}

}  // namespace planar
