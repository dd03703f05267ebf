#include "planar/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace planar {

namespace {

std::string fmt_radius(double r) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", r);
    return buf;
}

}  // namespace

Section::Section(Vec2 base_point, Vec2 dir) : base(base_point) {
    double n = dir.norm();
    if (n == 0.0 || !dir.finite()) throw Error("section direction must be nonzero");
    if (!base_point.finite()) throw Error("section base must be finite");
    direction = dir / n;
}

const char* to_string(CycleStability stability) {
    return stability == CycleStability::Attracting ? "ATTRACTING" : "REPELLING";
}

const char* to_string(AnnulusStatus status) {
    return status == AnnulusStatus::Found ? "FOUND" : "NO_INWARD_REGIME";
}

ReturnSample return_map(const FieldDef& field, const Section& section, double r,
                        const IntegratorConfig& cfg) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw Error("return map parameter must be positive");
    ReturnSample sample;
    sample.r_in = r;
    EventResult hit = integrate_until_event(field, section.at(r),
                                            RayCrossing{section.base, section.direction}, cfg);
    sample.status = hit.status;
    if (hit.status == FlowStatus::Event) {
        sample.r_out = hit.ray_r;
        sample.flight_time = hit.time;
    }
    return sample;
}

namespace {

struct GridSample {
    double r = 0.0;
    double g = 0.0;
    bool ok = false;
    bool neutral = false;
};

// g at a single radius; callers decide how to treat missing returns.
GridSample probe(const FieldDef& field, const Section& section, double r,
                 double tol, const IntegratorConfig& cfg) {
    GridSample s;
    s.r = r;
    ReturnSample ret = return_map(field, section, r, cfg);
    if (ret.status == FlowStatus::Event) {
        s.ok = true;
        s.g = ret.r_out - ret.r_in;
        s.neutral = std::abs(s.g) <= tol;
    }
    return s;
}

// Bisects the neutral/non-neutral transition between a neutral sample at
// lo and a non-neutral one at hi (either order) to width 1e-4.
double refine_band_edge(const FieldDef& field, const Section& section, double r_neutral,
                        double r_other, double tol, const IntegratorConfig& cfg) {
    while (std::abs(r_other - r_neutral) > 1e-4) {
        double m = 0.5 * (r_neutral + r_other);
        GridSample s = probe(field, section, m, tol, cfg);
        if (s.ok && s.neutral)
            r_neutral = m;
        else
            r_other = m;
    }
    return r_neutral;
}

// Bisects a strict sign change of g to a fixed point of the return map.
double bisect_fixed_point(const FieldDef& field, const Section& section, double lo,
                          double g_lo, double hi, const IntegratorConfig& cfg) {
    while (hi - lo > 1e-9) {
        double m = 0.5 * (lo + hi);
        if (m <= lo || m >= hi) break;
        GridSample s = probe(field, section, m, 0.0, cfg);
        if (!s.ok) break;  // settle for the bracket midpoint
        if (s.g == 0.0) return m;
        if ((g_lo < 0.0) == (s.g < 0.0)) {
            lo = m;
            g_lo = s.g;
        } else {
            hi = m;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

CycleReport detect_cycles(const FieldDef& field, const Section& section, double r_lo,
                          double r_hi, const CycleConfig& cfg) {
    if (!(r_lo > 0.0) || !(r_hi > r_lo) || !std::isfinite(r_hi))
        throw Error("cycle scan needs a positive radial interval");
    if (cfg.grid_n < 2) throw Error("cycle scan needs at least two grid points");
    if (!(cfg.tol_fixed > 0.0)) throw Error("tol_fixed must be positive");

    std::vector<GridSample> grid;
    grid.reserve(static_cast<std::size_t>(cfg.grid_n));
    CycleReport report;
    for (int i = 0; i < cfg.grid_n; ++i) {
        double r = i == cfg.grid_n - 1 ? r_hi
                                       : r_lo + (r_hi - r_lo) * i / (cfg.grid_n - 1);
        GridSample s = probe(field, section, r, cfg.tol_fixed, cfg.integrator);
        if (!s.ok) report.failed_samples.push_back(r);
        grid.push_back(s);
    }

    // neutral bands: maximal runs of neutral samples, edges sharpened
    // against the nearest valid non-neutral neighbor
    std::size_t n = grid.size();
    for (std::size_t i = 0; i < n;) {
        if (!grid[i].ok || !grid[i].neutral) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && grid[j + 1].ok && grid[j + 1].neutral) ++j;
        RadialBand band{grid[i].r, grid[j].r};
        if (i > 0 && grid[i - 1].ok)
            band.lo = refine_band_edge(field, section, grid[i].r, grid[i - 1].r,
                                       cfg.tol_fixed, cfg.integrator);
        if (j + 1 < n && grid[j + 1].ok)
            band.hi = refine_band_edge(field, section, grid[j].r, grid[j + 1].r,
                                       cfg.tol_fixed, cfg.integrator);
        report.neutral_bands.push_back(band);
        i = j + 1;
    }

    // isolated cycles: strict sign change between adjacent valid
    // non-neutral samples
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const GridSample& a = grid[i];
        const GridSample& b = grid[i + 1];
        if (!a.ok || !b.ok || a.neutral || b.neutral) continue;
        if (a.g * b.g >= 0.0) continue;
        IsolatedCycle cyc;
        cyc.r = bisect_fixed_point(field, section, a.r, a.g, b.r, cfg.integrator);
        cyc.stability = (a.g > 0.0 && b.g < 0.0) ? CycleStability::Attracting
                                                 : CycleStability::Repelling;
        report.isolated.push_back(cyc);
    }
    return report;
}

AnnulusBoundary annulus_boundary(const FieldDef& field, Vec2 center,
                                 const AnnulusConfig& cfg) {
    if (!(cfg.r_start > 0.0) || !(cfg.r_max > cfg.r_start))
        throw Error("annulus scan needs 0 < r_start < r_max");
    if (!(cfg.tol > 0.0) || !(cfg.bracket > 0.0))
        throw Error("annulus tolerances must be positive");
    Section section(center, cfg.direction);

    auto g_of = [&](double r) -> double {
        ReturnSample s = return_map(field, section, r, cfg.integrator);
        if (s.status != FlowStatus::Event)
            throw Error("annulus probe at r=" + fmt_radius(r) + " found no return (" +
                        std::string(to_string(s.status)) + ")");
        return s.r_out - s.r_in;
    };

    double lo = cfg.r_start;
    double g = g_of(lo);
    if (g < -cfg.tol)
        throw Error("inward returns already at r=" + fmt_radius(lo) +
                    "; no neutral core, base is not a center-type point");
    if (g > cfg.tol)
        throw Error("outward returns at r=" + fmt_radius(lo) +
                    "; repelling behavior is outside this scan's preconditions");

    // multiplicative sweep for the first strictly inward radius
    double hi = 0.0;
    for (double r = lo; r < cfg.r_max;) {
        r = std::min(r * 1.7, cfg.r_max);
        g = g_of(r);
        if (g < -cfg.tol) {
            hi = r;
            break;
        }
        if (g > cfg.tol)
            throw Error("outward returns at r=" + fmt_radius(r) +
                        "; repelling behavior is outside this scan's preconditions");
        lo = r;
    }

    AnnulusBoundary out;
    if (hi == 0.0) {
        out.status = AnnulusStatus::NoInwardRegime;
        out.band = {lo, cfg.r_max};
        out.diagnostic = "no inward regime up to r_max=" + fmt_radius(cfg.r_max) +
                         "; every sampled return is neutral, which suggests a global "
                         "center at this scale";
        return out;
    }

    while (hi - lo > cfg.bracket) {
        double m = 0.5 * (lo + hi);
        g = g_of(m);
        if (g < -cfg.tol)
            hi = m;
        else if (g <= cfg.tol)
            lo = m;
        else
            throw Error("outward returns at r=" + fmt_radius(m) +
                        "; repelling behavior is outside this scan's preconditions");
    }

    out.status = AnnulusStatus::Found;
    out.radius = 0.5 * (lo + hi);
    out.band = {lo, hi};
    return out;
}

std::string return_profile_csv(const std::vector<ReturnSample>& samples) {
    std::string out = "r_in,r_out,flight_time\n";
    char line[144];
    for (const ReturnSample& s : samples) {
        if (s.status != FlowStatus::Event) continue;
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", s.r_in, s.r_out,
                      s.flight_time);
        out += line;
    }
    return out;
}

}  // namespace planar
