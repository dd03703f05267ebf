#include "planar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "planar/rng.hpp"

namespace planar {

const char* to_string(Property p) {
    switch (p) {
        case Property::DetPositive: return "DET_POSITIVE";
        case Property::TraceNonpositive: return "TRACE_NONPOSITIVE";
        case Property::NoRealPositiveEig: return "NO_REAL_POSITIVE_EIG";
    }
    return "?";
}

const char* to_string(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::Certified: return "CERTIFIED";
        case VerifyStatus::SampledOk: return "SAMPLED_OK";
        case VerifyStatus::Violated: return "VIOLATED";
    }
    return "?";
}

const char* to_string(Ternary t) {
    switch (t) {
        case Ternary::True: return "true";
        case Ternary::False: return "false";
        case Ternary::Indeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

// Certified margin of the property over a box, if the enclosure proves it.
// A real eigenvalue >= 0 exists iff disc >= 0 and (T > 0 or D < 0), so the
// eigenvalue property is proved by (T_hi <= 0 and D_lo >= 0) or disc_hi < 0.
// The spec's shorthand "T_hi < 0" alone would wrongly accept T=-1, D=-1,
// whose larger real eigenvalue is positive.
std::optional<double> box_margin(Property prop, const IntervalJet& ij, double tol) {
    switch (prop) {
        case Property::DetPositive:
            if (ij.det.lo > 0.0) return ij.det.lo;
            return std::nullopt;
        case Property::TraceNonpositive:
            if (ij.trace.hi <= tol) return tol - ij.trace.hi;
            return std::nullopt;
        case Property::NoRealPositiveEig: {
            if (ij.trace.hi <= 0.0 && ij.det.lo >= 0.0)
                return std::min(-ij.trace.hi, ij.det.lo);
            Interval disc = pow_int(ij.trace, 2) - 4.0 * ij.det;
            if (disc.hi < 0.0) return -disc.hi;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

// Pointwise violation margin; > 0 means the sample violates the property.
double point_margin(Property prop, const JetSample& s, double tol) {
    switch (prop) {
        case Property::DetPositive:
            return -s.det;
        case Property::TraceNonpositive:
            return s.trace - tol;
        case Property::NoRealPositiveEig: {
            double disc = s.trace * s.trace - 4.0 * s.det;
            if (disc < 0.0) return -std::numeric_limits<double>::infinity();
            return s.eig_re.second;
        }
    }
    return -std::numeric_limits<double>::infinity();
}

bool split_box(const Rect& box, Rect& a, Rect& b) {
    if (box.width() >= box.height()) {
        double mid = 0.5 * (box.xmin + box.xmax);
        if (mid <= box.xmin || mid >= box.xmax) return false;
        a = Rect(box.xmin, mid, box.ymin, box.ymax);
        b = Rect(mid, box.xmax, box.ymin, box.ymax);
    } else {
        double mid = 0.5 * (box.ymin + box.ymax);
        if (mid <= box.ymin || mid >= box.ymax) return false;
        a = Rect(box.xmin, box.xmax, box.ymin, mid);
        b = Rect(box.xmin, box.xmax, mid, box.ymax);
    }
    return true;
}

std::vector<Vec2> probe_points(const Rect& box, int per_axis) {
    std::vector<Vec2> pts;
    if (per_axis <= 1) {
        pts.push_back(box.center());
        pts.push_back({box.xmin, box.ymin});
        pts.push_back({box.xmax, box.ymin});
        pts.push_back({box.xmin, box.ymax});
        pts.push_back({box.xmax, box.ymax});
        return pts;
    }
    for (int i = 0; i < per_axis; ++i)
        for (int j = 0; j < per_axis; ++j) {
            double fx = double(i) / (per_axis - 1);
            double fy = double(j) / (per_axis - 1);
            pts.push_back({box.xmin + fx * box.width(), box.ymin + fy * box.height()});
        }
    return pts;
}

}  // namespace

VerificationReport verify_property(const FieldDef& field, const Region& region,
                                   Property property, const VerifyConfig& cfg) {
    VerificationReport rep;
    rep.property = property;
    const double witness_threshold = std::max(0.75 * cfg.tol, 1e-12);

    std::vector<std::pair<Rect, int>> stack;
    stack.emplace_back(region, 0);
    double min_margin = std::numeric_limits<double>::infinity();
    double uncertified = 0.0, enclosure_failed = 0.0;

    auto probe = [&](const Rect& box, int per_axis) -> bool {
        for (Vec2 p : probe_points(box, per_axis)) {
            ++rep.samples_checked;
            JetSample s;
            try {
                s = jet(field, p);
            } catch (const EvalError&) {
                continue;
            }
            double m = point_margin(property, s, cfg.tol);
            if (m > witness_threshold) {
                rep.status = VerifyStatus::Violated;
                rep.witness = s;
                rep.min_margin = -m;
                return true;
            }
        }
        return false;
    };

    while (!stack.empty()) {
        auto [box, depth] = stack.back();
        stack.pop_back();
        if (rep.boxes_processed >= cfg.max_boxes) {
            uncertified += box.area();
            continue;
        }
        ++rep.boxes_processed;

        bool enclosed = true;
        std::optional<double> margin;
        try {
            IntervalJet ij = interval_jet(field, box);
            margin = box_margin(property, ij, cfg.tol);
        } catch (const EnclosureError&) {
            enclosed = false;
        }
        if (margin) {
            min_margin = std::min(min_margin, *margin);
            continue;
        }
        if (probe(box, 1)) return rep;
        if (depth < cfg.max_depth) {
            Rect a, b;
            if (split_box(box, a, b)) {
                stack.emplace_back(b, depth + 1);
                stack.emplace_back(a, depth + 1);
                continue;
            }
        }
        // out of depth: one denser sampling pass, then concede the box
        if (probe(box, 5)) return rep;
        (enclosed ? uncertified : enclosure_failed) += box.area();
    }

    rep.uncertified_area = uncertified + enclosure_failed;
    if (rep.uncertified_area == 0.0) {
        rep.status = VerifyStatus::Certified;
        rep.min_margin = min_margin;
    } else {
        rep.status = VerifyStatus::SampledOk;
        rep.min_margin = std::isfinite(min_margin) ? min_margin : 0.0;
        std::ostringstream note;
        note << "unproved area " << rep.uncertified_area << " of " << region.area();
        if (enclosure_failed > 0.0)
            note << " (enclosure failures on " << enclosure_failed << ")";
        note << "; " << rep.samples_checked << " samples found no violation";
        rep.note = note.str();
    }
    return rep;
}

std::vector<VerificationReport> verify_hypotheses(const FieldDef& field,
                                                  const Region& region,
                                                  const VerifyConfig& cfg) {
    std::vector<VerificationReport> reports;
    reports.push_back(verify_property(field, region, Property::DetPositive, cfg));
    reports.push_back(verify_property(field, region, Property::TraceNonpositive, cfg));
    reports.push_back(verify_property(field, region, Property::NoRealPositiveEig, cfg));
    return reports;
}

TraceFlatness trace_vanishes_near(const FieldDef& field, Vec2 point, double radius,
                                  double tol, int max_depth) {
    if (!(radius > 0.0)) throw Error("trace_vanishes_near requires radius > 0");
    if (tol < 0.0) throw Error("trace_vanishes_near requires tol >= 0");

    TraceFlatness out;
    const double r2 = radius * radius;
    const double witness_threshold = std::max(2.0 * tol, 1e-15);
    std::vector<std::pair<Rect, int>> stack;
    stack.emplace_back(
        Rect(point.x - radius, point.x + radius, point.y - radius, point.y + radius), 0);
    double sup = 0.0;
    bool leftover = false;

    while (!stack.empty()) {
        auto [box, depth] = stack.back();
        stack.pop_back();
        if (box.dist2(point) > r2) continue;  // no overlap with the closed disk
        ++out.boxes_processed;

        bool flat = false;
        try {
            IntervalJet ij = interval_jet(field, box);
            if (ij.trace.lo >= -tol && ij.trace.hi <= tol) {
                flat = true;
                sup = std::max(sup, std::max(std::abs(ij.trace.lo), std::abs(ij.trace.hi)));
            }
        } catch (const EnclosureError&) {
        }
        if (flat) continue;

        for (Vec2 p : probe_points(box, 3)) {
            if ((p - point).norm2() > r2) continue;
            JetSample s;
            try {
                s = jet(field, p);
            } catch (const EvalError&) {
                continue;
            }
            if (std::abs(s.trace) > witness_threshold) {
                out.verdict = Ternary::False;
                out.witness = s;
                return out;
            }
        }
        Rect a, b;
        if (depth < max_depth && split_box(box, a, b)) {
            stack.emplace_back(b, depth + 1);
            stack.emplace_back(a, depth + 1);
        } else {
            leftover = true;
        }
    }
    if (leftover) {
        out.verdict = Ternary::Indeterminate;
    } else {
        out.verdict = Ternary::True;
        out.sup_abs_trace = sup;
    }
    return out;
}

namespace {

// Grid-plus-pattern search for the minimum of T over a closed disk.
// Returns the best point found and its trace.
std::pair<Vec2, double> minimize_trace(const FieldDef& field, Vec2 center, double r) {
    const int n = 17;
    Vec2 best = center;
    double best_t = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec2 p{center.x + r * (2.0 * i / (n - 1) - 1.0),
                   center.y + r * (2.0 * j / (n - 1) - 1.0)};
            if ((p - center).norm2() > r * r) continue;
            try {
                double t = jet(field, p).trace;
                if (t < best_t) {
                    best_t = t;
                    best = p;
                }
            } catch (const EvalError&) {
            }
        }
    double step = r / double(n - 1);
    for (int it = 0; it < 60 && step > 1e-14 * r; ++it) {
        bool improved = false;
        const Vec2 moves[4] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
        for (Vec2 m : moves) {
            Vec2 p = best + m;
            if ((p - center).norm2() > r * r) continue;
            try {
                double t = jet(field, p).trace;
                if (t < best_t) {
                    best_t = t;
                    best = p;
                    improved = true;
                }
            } catch (const EvalError&) {
            }
        }
        if (!improved) step *= 0.5;
    }
    return {best, best_t};
}

}  // namespace

ClosureResult in_closure_T_minus(const FieldDef& field, Vec2 point,
                                 const ClosureConfig& cfg) {
    if (!(cfg.r_min > 0.0) || cfg.r_min > 1.0)
        throw Error("in_closure_T_minus requires 0 < r_min <= 1");
    if (!(cfg.delta > 0.0)) throw Error("in_closure_T_minus requires delta > 0");

    ClosureResult res;
    bool all_found = true;
    for (double r = 1.0; r >= cfg.r_min; r *= 0.5) {
        auto [p, t] = minimize_trace(field, point, r);
        if (t < -cfg.delta) {
            res.witness = p;
            res.witness_trace = t;
            res.innermost_radius = r;
        } else {
            all_found = false;
            break;
        }
    }
    if (all_found) {
        res.verdict = Ternary::True;
        return res;
    }
    res.witness.reset();
    res.witness_trace = 0.0;
    res.innermost_radius = 0.0;
    TraceFlatness flat = trace_vanishes_near(field, point, cfg.r_min, cfg.delta);
    res.verdict = (flat.verdict == Ternary::True) ? Ternary::False : Ternary::Indeterminate;
    return res;
}

CriticalPoints find_critical_points(const FieldDef& field, const Region& region,
                                    const CriticalPointConfig& cfg) {
    if (cfg.grid < 1) throw Error("find_critical_points requires grid >= 1");
    CriticalPoints out;
    std::vector<Vec2> found;

    Rect roam(region.xmin - 0.2 * region.width(), region.xmax + 0.2 * region.width(),
              region.ymin - 0.2 * region.height(), region.ymax + 0.2 * region.height());

    for (int i = 0; i < cfg.grid; ++i)
        for (int j = 0; j < cfg.grid; ++j) {
            ++out.seeds_tried;
            Vec2 p{region.xmin + (i + 0.5) * region.width() / cfg.grid,
                   region.ymin + (j + 0.5) * region.height() / cfg.grid};
            bool ok = false;
            for (int it = 0; it < cfg.max_iter; ++it) {
                JetSample s;
                try {
                    s = jet(field, p);
                } catch (const EvalError&) {
                    break;
                }
                if (s.value.norm() < cfg.residual_tol) {
                    ok = true;
                    break;
                }
                if (std::abs(s.det) < 1e-250) break;
                double inv = 1.0 / s.det;
                Vec2 dp{-inv * (s.jac[1][1] * s.value.x - s.jac[0][1] * s.value.y),
                        -inv * (-s.jac[1][0] * s.value.x + s.jac[0][0] * s.value.y)};
                p = p + dp;
                if (!p.finite() || !roam.contains(p)) break;
            }
            if (ok && region.contains(p)) {
                ++out.seeds_converged;
                found.push_back(p);
            }
        }

    std::sort(found.begin(), found.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    for (Vec2 p : found) {
        bool dup = false;
        for (Vec2 q : out.points)
            if ((p - q).norm() < cfg.dedupe_dist) {
                dup = true;
                break;
            }
        if (!dup) out.points.push_back(p);
    }
    return out;
}

std::optional<CollisionPair> injectivity_falsify(const FieldDef& field,
                                                 const Region& region, long n_pairs,
                                                 std::uint64_t seed) {
    if (n_pairs < 1) throw Error("injectivity_falsify requires n_pairs >= 1");
    Rng rng(seed);

    struct Cand {
        Vec2 p, q;
        double resid;
    };
    const std::size_t keep = 32;
    const double sep_floor =
        std::max(1e-3, 0.01 * std::hypot(region.width(), region.height()));
    std::vector<Cand> cands;

    for (long i = 0; i < n_pairs; ++i) {
        Vec2 p = rng.point(region);
        Vec2 q = rng.point(region);
        if ((p - q).norm() < sep_floor) continue;
        double resid;
        try {
            resid = (eval_velocity(field, p) - eval_velocity(field, q)).norm();
        } catch (const EvalError&) {
            continue;
        }
        if (cands.size() < keep) {
            cands.push_back({p, q, resid});
            std::sort(cands.begin(), cands.end(),
                      [](const Cand& a, const Cand& b) { return a.resid < b.resid; });
        } else if (resid < cands.back().resid) {
            cands.back() = {p, q, resid};
            std::sort(cands.begin(), cands.end(),
                      [](const Cand& a, const Cand& b) { return a.resid < b.resid; });
        }
    }

    auto clamp = [&](Vec2 v) {
        return Vec2{std::clamp(v.x, region.xmin, region.xmax),
                    std::clamp(v.y, region.ymin, region.ymax)};
    };

    for (const Cand& c : cands) {
        Vec2 p = c.p, q = c.q;
        for (int it = 0; it < 60; ++it) {
            JetSample sp, sq;
            try {
                sp = jet(field, p);
                sq = jet(field, q);
            } catch (const EvalError&) {
                break;
            }
            Vec2 g = sp.value - sq.value;
            double resid = g.norm();
            double sep = (p - q).norm();
            if (resid < 1e-9) {
                if (sep > 1e-6) return CollisionPair{p, q, resid, sep};
                break;
            }
            if (sep < 5e-7) break;  // collapsing onto the diagonal
            // minimal-norm Gauss-Newton step for [J(p) | -J(q)]
            double a = 0.0, b = 0.0, d = 0.0;
            for (int r = 0; r < 2; ++r) {
                a += sp.jac[0][r] * sp.jac[0][r] + sq.jac[0][r] * sq.jac[0][r];
                b += sp.jac[0][r] * sp.jac[1][r] + sq.jac[0][r] * sq.jac[1][r];
                d += sp.jac[1][r] * sp.jac[1][r] + sq.jac[1][r] * sq.jac[1][r];
            }
            double det = a * d - b * b;
            if (std::abs(det) < 1e-250) break;
            double l0 = (-d * g.x + b * g.y) / det;
            double l1 = (b * g.x - a * g.y) / det;
            Vec2 dp{sp.jac[0][0] * l0 + sp.jac[1][0] * l1,
                    sp.jac[0][1] * l0 + sp.jac[1][1] * l1};
            Vec2 dq{-(sq.jac[0][0] * l0 + sq.jac[1][0] * l1),
                    -(sq.jac[0][1] * l0 + sq.jac[1][1] * l1)};
            p = clamp(p + dp);
            q = clamp(q + dq);
        }
    }
    return std::nullopt;
}

}  // namespace planar
