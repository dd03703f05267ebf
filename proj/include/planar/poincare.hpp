#pragma once

#include <string>
#include <vector>

#include "planar/field.hpp"
#include "planar/flow.hpp"
#include "planar/geometry.hpp"

namespace planar {

/// Ray section base + r*direction, r > 0. The base is meant to be a
/// critical point so the parameterization is one-dimensional and monotone
/// near it.
struct Section {
    Vec2 base{0.0, 0.0};
    Vec2 direction{1.0, 0.0};

    Section() = default;
    /// Normalizes the direction; rejects zero or non-finite input.
    Section(Vec2 base_point, Vec2 dir);

    Vec2 at(double r) const { return base + r * direction; }
};

/// One evaluation of the return map. status == FlowStatus::Event means the
/// orbit re-crossed the section; r_out and flight_time are set only then.
struct ReturnSample {
    double r_in = 0.0;
    double r_out = 0.0;
    double flight_time = 0.0;
    FlowStatus status = FlowStatus::NotFound;
};

/// Integrates from section.at(r) until the first positively-oriented
/// transversal re-crossing of the section ray. The launch instant never
/// counts as a crossing. Non-returning orbits surface as the integrator
/// status (NotFound on step exhaustion, Blowup on escape).
ReturnSample return_map(const FieldDef& field, const Section& section, double r,
                        const IntegratorConfig& cfg = {});

enum class CycleStability { Attracting, Repelling };
const char* to_string(CycleStability stability);

struct IsolatedCycle {
    double r = 0.0;
    CycleStability stability = CycleStability::Attracting;
};

/// Closed radial interval [lo, hi] on a section.
struct RadialBand {
    double lo = 0.0;
    double hi = 0.0;
};

struct CycleConfig {
    int grid_n = 48;
    double tol_fixed = 1e-7;
    IntegratorConfig integrator{};
};

/// Result of a grid scan of g(r) = r_out - r.
struct CycleReport {
    std::vector<IsolatedCycle> isolated;
    std::vector<RadialBand> neutral_bands;
    std::vector<double> failed_samples;  // r values whose orbit never returned
};

/// Evaluates g on a uniform grid over [r_lo, r_hi]. Strict sign changes
/// between non-neutral samples are refined by bisection into isolated
/// cycles; maximal runs with |g| <= tol_fixed become neutral bands whose
/// outer edges are sharpened against the adjacent non-neutral samples.
/// Samples without a return are excluded and reported.
CycleReport detect_cycles(const FieldDef& field, const Section& section, double r_lo,
                          double r_hi, const CycleConfig& cfg = {});

enum class AnnulusStatus {
    Found,
    NoInwardRegime,  // every sample up to r_max is neutral: global-center evidence
};
const char* to_string(AnnulusStatus status);

struct AnnulusConfig {
    Vec2 direction{1.0, 0.0};
    double r_start = 0.05;
    double r_max = 8.0;
    double tol = 1e-7;
    double bracket = 1e-3;
    IntegratorConfig integrator{};
};

struct AnnulusBoundary {
    AnnulusStatus status = AnnulusStatus::NoInwardRegime;
    double radius = 0.0;
    RadialBand band{};
    std::string diagnostic;
};

/// Bisects between the neutral regime (|g| <= tol, period annulus) and the
/// strictly inward regime (g < -tol) on a ray from the center; the returned
/// band brackets the boundary to width <= cfg.bracket. Outward returns or a
/// missing neutral core violate the center precondition and throw.
AnnulusBoundary annulus_boundary(const FieldDef& field, Vec2 center,
                                 const AnnulusConfig& cfg = {});

/// CSV profile "r_in,r_out,flight_time"; samples without a return are
/// skipped.
std::string return_profile_csv(const std::vector<ReturnSample>& samples);

}  // namespace planar
