#pragma once

#include <optional>
#include <string>
#include <vector>

#include "planar/field.hpp"
#include "planar/flow.hpp"
#include "planar/geometry.hpp"
#include "planar/poincare.hpp"
#include "planar/verify.hpp"

namespace planar {

/// The trichotomy for a certified critical point, plus the honest fourth
/// outcome when certification or a criterion comes back indeterminate.
enum class Verdict {
    GlobalCenter,
    GasPoint,
    CenterWithCompactAttractor,
    HypothesesNotCertified,
};
const char* to_string(Verdict v);

struct GasConfig {
    double rho = 1e-2;  // probes must enter the ball B(O, rho)
    IntegratorConfig integrator{};
};

/// Empirical convergence evidence. Failures are starting points whose
/// orbit never entered the ball within the step budget; they witness
/// nothing beyond that, and are reported rather than hidden.
struct GasProbeSummary {
    long converged = 0;
    long total = 0;
    double max_entry_time = 0.0;
    std::vector<Vec2> failures;
};

/// Launches n_angles orbits from every circle |x - O| = r, r in radii,
/// and counts how many enter B(O, cfg.rho) before the integrator's step
/// budget runs out.
GasProbeSummary verify_gas_empirically(const FieldDef& field, Vec2 O,
                                       const std::vector<double>& radii,
                                       int n_angles, const GasConfig& cfg = {});

struct ClassifyConfig {
    VerifyConfig verify{};
    ClosureConfig closure{};
    AnnulusConfig annulus{};
    GasConfig gas{};
    // Probe circle radii for the GAS evidence stage. Empty means 0.1, 0.5
    // and 1.0 times the distance from O to the nearest region edge.
    std::vector<double> gas_radii{};
    int gas_angles = 16;
};

/// Verdict plus everything it rests on. Exactly one verdict; every claim
/// is relative to `region`. attractor_radius and attractor_cycle are set
/// only for CenterWithCompactAttractor; gas only for GasPoint;
/// region_limited marks a GlobalCenter concluded from the absence of an
/// inward regime rather than from analyticity.
struct Classification {
    Verdict verdict = Verdict::HypothesesNotCertified;
    Vec2 critical_point;
    Region region;
    std::string field_name;
    bool analytic_used = false;
    bool region_limited = false;
    std::vector<VerificationReport> hypotheses;
    TraceFlatness trace_near;
    ClosureResult closure;
    std::optional<AnnulusBoundary> annulus;
    std::optional<double> attractor_radius;
    std::vector<Vec2> attractor_cycle;  // boundary cycle polyline, one turn
    std::optional<GasProbeSummary> gas;
    std::string diagnostic;
};

/// The decision procedure. (1) Certify the standing hypotheses on the
/// region; a violation ends the run. (2) Decide whether O lies in the
/// closure of {T < 0}: yes gives GasPoint with empirical convergence
/// evidence attached. (3) Otherwise O is center-like: a declared-analytic
/// field is a GlobalCenter outright; for the rest the period-annulus
/// boundary search either finds the compact attractor or, finding no
/// inward regime, yields a region-limited GlobalCenter. Indeterminate
/// criteria surface as HypothesesNotCertified with a diagnostic.
/// Requires |F(O)| < 1e-10 and O inside the region.
Classification classify_critical_point(const FieldDef& field, Vec2 O,
                                       const Region& region,
                                       const ClassifyConfig& cfg = {});

}  // namespace planar
