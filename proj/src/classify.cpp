#include "planar/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace planar {

namespace {

const double kTwoPi = 6.283185307179586476925287;

std::vector<double> default_radii(const Region& region, Vec2 O) {
    double edge = std::min(std::min(O.x - region.xmin, region.xmax - O.x),
                           std::min(O.y - region.ymin, region.ymax - O.y));
    return {0.1 * edge, 0.5 * edge, edge};
}

// One full turn of the boundary cycle through O + radius*dir, sampled on
// the dense output of a single return.
std::vector<Vec2> cycle_polyline(const FieldDef& field, Vec2 O, double radius,
                                 const AnnulusConfig& cfg) {
    double norm = std::hypot(cfg.direction.x, cfg.direction.y);
    Vec2 dir{cfg.direction.x / norm, cfg.direction.y / norm};
    Vec2 start{O.x + radius * dir.x, O.y + radius * dir.y};
    ReturnSample ret = return_map(field, Section(O, dir), radius, cfg.integrator);
    if (ret.status != FlowStatus::Event) return {};
    Trajectory traj = integrate(field, start, ret.flight_time, cfg.integrator);
    const int n = 256;
    std::vector<Vec2> poly;
    poly.reserve(n);
    for (int k = 0; k < n; ++k)
        poly.push_back(traj.state_at(ret.flight_time * k / n));
    return poly;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::GlobalCenter: return "GLOBAL_CENTER";
        case Verdict::GasPoint: return "GAS_POINT";
        case Verdict::CenterWithCompactAttractor:
            return "CENTER_WITH_COMPACT_ATTRACTOR";
        case Verdict::HypothesesNotCertified: return "HYPOTHESES_NOT_CERTIFIED";
    }
    return "HYPOTHESES_NOT_CERTIFIED";
}

GasProbeSummary verify_gas_empirically(const FieldDef& field, Vec2 O,
                                       const std::vector<double>& radii,
                                       int n_angles, const GasConfig& cfg) {
    if (radii.empty()) throw Error("need at least one probe radius");
    for (double r : radii)
        if (!std::isfinite(r) || r <= 0.0)
            throw Error("probe radii must be positive and finite");
    if (n_angles < 1) throw Error("need at least one probe angle");
    if (!std::isfinite(cfg.rho) || cfg.rho <= 0.0)
        throw Error("target ball radius must be positive");

    GasProbeSummary out;
    for (double r : radii) {
        for (int k = 0; k < n_angles; ++k) {
            double th = kTwoPi * k / n_angles;
            Vec2 start{O.x + r * std::cos(th), O.y + r * std::sin(th)};
            ++out.total;
            EventResult res = integrate_until_event(field, start,
                                                    EnterBall{O, cfg.rho},
                                                    cfg.integrator);
            if (res.status == FlowStatus::Event) {
                ++out.converged;
                out.max_entry_time = std::max(out.max_entry_time, res.time);
            } else {
                out.failures.push_back(start);
            }
        }
    }
    return out;
}

Classification classify_critical_point(const FieldDef& field, Vec2 O,
                                       const Region& region,
                                       const ClassifyConfig& cfg) {
    Vec2 f = eval_velocity(field, O);
    if (std::hypot(f.x, f.y) >= 1e-10)
        throw Error("classification needs a critical point: |F(O)| >= 1e-10");
    if (!region.contains(O)) throw Error("the region must contain O");

    Classification out;
    out.critical_point = O;
    out.region = region;
    out.field_name = field.name();

    out.hypotheses = verify_hypotheses(field, region, cfg.verify);
    for (const VerificationReport& rep : out.hypotheses) {
        if (rep.status != VerifyStatus::Violated) continue;
        out.verdict = Verdict::HypothesesNotCertified;
        char buf[128];
        if (rep.witness) {
            std::snprintf(buf, sizeof buf, "%s violated at (%.12g, %.12g)",
                          to_string(rep.property), rep.witness->point.x,
                          rep.witness->point.y);
        } else {
            std::snprintf(buf, sizeof buf, "%s violated", to_string(rep.property));
        }
        out.diagnostic = buf;
        return out;
    }

    // Both criteria probe the same innermost radius, so at most one of
    // them can come back true.
    out.closure = in_closure_T_minus(field, O, cfg.closure);
    out.trace_near = trace_vanishes_near(field, O, cfg.closure.r_min);

    if (out.closure.verdict == Ternary::Indeterminate) {
        out.verdict = Verdict::HypothesesNotCertified;
        out.diagnostic = "membership of O in the closure of {T < 0} is "
                         "numerically indeterminate at the probed radii";
        return out;
    }

    if (out.closure.verdict == Ternary::True) {
        out.verdict = Verdict::GasPoint;
        std::vector<double> radii =
            cfg.gas_radii.empty() ? default_radii(region, O) : cfg.gas_radii;
        out.gas = verify_gas_empirically(field, O, radii, cfg.gas_angles, cfg.gas);
        return out;
    }

    if (field.analytic()) {
        out.verdict = Verdict::GlobalCenter;
        out.analytic_used = true;
        return out;
    }

    try {
        out.annulus = annulus_boundary(field, O, cfg.annulus);
    } catch (const Error& e) {
        out.verdict = Verdict::HypothesesNotCertified;
        out.diagnostic = e.what();
        return out;
    }

    if (out.annulus->status == AnnulusStatus::Found) {
        out.verdict = Verdict::CenterWithCompactAttractor;
        out.attractor_radius = out.annulus->radius;
        out.attractor_cycle =
            cycle_polyline(field, O, out.annulus->radius, cfg.annulus);
        return out;
    }

    out.verdict = Verdict::GlobalCenter;
    out.region_limited = true;
    out.diagnostic = out.annulus->diagnostic;
    return out;
}

}  // namespace planar
