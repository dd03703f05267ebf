#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "planar/field.hpp"
#include "planar/geometry.hpp"

namespace planar {

/// The region certification works on. All claims are relative to a region;
/// nothing here asserts anything about the whole plane.
using Region = Rect;

enum class Property {
    DetPositive,       // D(x,y) > 0
    TraceNonpositive,  // T(x,y) <= tol
    NoRealPositiveEig, // no real eigenvalue of J exceeds 0
};

enum class VerifyStatus { Certified, SampledOk, Violated };

enum class Ternary { True, False, Indeterminate };

const char* to_string(Property p);
const char* to_string(VerifyStatus s);
const char* to_string(Ternary t);

/// Outcome of branch-and-bound certification for one property.
/// min_margin: for Certified, the infimum over accepted boxes of the
/// certified margin (D lower bound; -T upper bound; eigenvalue headroom).
/// For Violated it is minus the witness's pointwise violation margin.
struct VerificationReport {
    Property property = Property::DetPositive;
    VerifyStatus status = VerifyStatus::SampledOk;
    std::optional<JetSample> witness;
    long boxes_processed = 0;
    long samples_checked = 0;
    double min_margin = 0.0;
    double uncertified_area = 0.0;
    std::string note;
};

struct VerifyConfig {
    int max_depth = 14;
    double tol = 0.0;         // slack for TRACE_NONPOSITIVE: accept T <= tol
    long max_boxes = 200000;  // hard cap; exceeding it downgrades to SampledOk
};

/// Certifies (or refutes) the three standing hypotheses over the region.
/// Branch-and-bound on interval enclosures, depth-first with deterministic
/// ordering: a box is accepted when its enclosure proves the property,
/// split otherwise; pointwise violations at sampled points short-circuit to
/// Violated with a re-checkable witness. Boxes left unproved at max depth
/// (or enclosure failures) downgrade the result to SampledOk, never up.
/// Reports come back in the order DET_POSITIVE, TRACE_NONPOSITIVE,
/// NO_REAL_POSITIVE_EIG.
std::vector<VerificationReport> verify_hypotheses(const FieldDef& field,
                                                  const Region& region,
                                                  const VerifyConfig& cfg = {});

/// Single-property variant of verify_hypotheses.
VerificationReport verify_property(const FieldDef& field, const Region& region,
                                   Property property, const VerifyConfig& cfg = {});

/// Whether sup |T| <= tol over the closed disk, certified by a box cover.
struct TraceFlatness {
    Ternary verdict = Ternary::Indeterminate;
    std::optional<JetSample> witness;  // point in the disk with |T| > tol
    double sup_abs_trace = 0.0;        // certified upper bound when True
    long boxes_processed = 0;
};

TraceFlatness trace_vanishes_near(const FieldDef& field, Vec2 point, double radius,
                                  double tol = 1e-12, int max_depth = 14);

struct ClosureConfig {
    double r_min = 1e-3;   // smallest probed neighborhood radius
    double delta = 1e-12;  // strictness margin: a witness needs T < -delta
};

/// Decidable surrogate for membership of `point` in the closure of
/// {T < 0}: true iff every probed disk of radius 1, 1/2, ... down to r_min
/// contains a point with T < -delta; false iff the trace is certified flat
/// at radius r_min; indeterminate otherwise.
struct ClosureResult {
    Ternary verdict = Ternary::Indeterminate;
    std::optional<Vec2> witness;  // innermost point found with T < -delta
    double witness_trace = 0.0;
    double innermost_radius = 0.0;
};

ClosureResult in_closure_T_minus(const FieldDef& field, Vec2 point,
                                 const ClosureConfig& cfg = {});

struct CriticalPointConfig {
    int grid = 24;         // Newton seeds per axis
    int max_iter = 50;
    double residual_tol = 1e-10;
    double dedupe_dist = 1e-8;
};

/// Newton-refined critical points inside the region, deduplicated and
/// sorted lexicographically. Non-convergent seeds are dropped and counted.
struct CriticalPoints {
    std::vector<Vec2> points;
    long seeds_tried = 0;
    long seeds_converged = 0;
};

CriticalPoints find_critical_points(const FieldDef& field, const Region& region,
                                    const CriticalPointConfig& cfg = {});

/// A falsified injectivity claim: two distinct points with equal images.
struct CollisionPair {
    Vec2 p;
    Vec2 q;
    double residual = 0.0;  // |F(p) - F(q)|
    double separation = 0.0;
};

/// Random-restart search for a collision of F = (P,Q) in the region:
/// samples n_pairs point pairs, then runs minimal-norm Gauss-Newton from
/// the most promising well-separated candidates. Success requires
/// |F(p)-F(q)| < 1e-9 and |p-q| > 1e-6. Deterministic for a fixed seed;
/// returns nothing when no collision is found (which proves nothing).
std::optional<CollisionPair> injectivity_falsify(const FieldDef& field,
                                                 const Region& region, long n_pairs,
                                                 std::uint64_t seed);

}  // namespace planar
