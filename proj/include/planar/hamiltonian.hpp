#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "planar/field.hpp"
#include "planar/flow.hpp"
#include "planar/geometry.hpp"

namespace planar {

/// Uniform grid of scalar samples over a rectangle. Row-major with x
/// fastest: values[j * nx + i] is the sample at node(i, j), node(0, 0)
/// sits at (xmin, ymin). nx, ny >= 2 so the spacings are well defined.
struct ScalarGrid {
    Rect region;
    int nx = 0;
    int ny = 0;
    Vec2 base;  // anchor point, H(base) = 0
    std::vector<double> values;

    double dx() const { return region.width() / (nx - 1); }
    double dy() const { return region.height() / (ny - 1); }

    Vec2 node(int i, int j) const {
        double x = i == nx - 1 ? region.xmax : region.xmin + dx() * i;
        double y = j == ny - 1 ? region.ymax : region.ymin + dy() * j;
        return {x, y};
    }

    double value(int i, int j) const {
        return values[static_cast<std::size_t>(j) * nx + i];
    }
    double& value(int i, int j) {
        return values[static_cast<std::size_t>(j) * nx + i];
    }

    bool contains(Vec2 p) const { return region.contains(p); }

    /// Bilinear interpolation. Throws Error outside the region.
    double interpolate(Vec2 p) const;
};

/// Which axis the L-shaped integration path from the base point takes
/// first. The two orders agree exactly when T is identically zero; the
/// difference between them is a cheap path-dependence probe.
enum class PathOrder { XFirst, YFirst };

/// Reconstructs the Hamiltonian of a divergence-free field on an n-by-n
/// grid: H(p) is the line integral of Q dx - P dy from base to p along an
/// axis-parallel L-path (adaptive Simpson), so F = (-H_y, H_x) and
/// H(base) = 0. Throws Error unless |T| <= 1e-12 is certified over the
/// whole region by interval arithmetic: without that the integral depends
/// on the path and the result would be meaningless. base must lie in the
/// region and n >= 2.
ScalarGrid reconstruct_hamiltonian(const FieldDef& field, Vec2 base,
                                   const Rect& region, int n,
                                   PathOrder order = PathOrder::XFirst);

/// Single-point form of the same line integral. Does not re-certify
/// flatness, so the caller must already know T vanishes between base and
/// p; the grid reconstruction above is the gated entry point.
double hamiltonian_value(const FieldDef& field, Vec2 base, Vec2 p,
                         PathOrder order = PathOrder::XFirst);

/// Max over `samples` randomly chosen interior grid nodes of
/// |P + H_y| + |Q - H_x|, the gradient residual of the Hamiltonian
/// relations, with H_x and H_y taken as central differences of the
/// neighbouring node values. Deterministic in seed. Requires a grid of at
/// least 3x3 nodes and samples >= 1.
double hamiltonian_residual(const FieldDef& field, const ScalarGrid& grid,
                            int samples, std::uint64_t seed);

enum class ExtremumKind { Min, Max, Indefinite };
const char* to_string(ExtremumKind k);

/// Hessian of the reconstructed Hamiltonian at a critical point,
/// assembled straight from the field jacobian: [[Q_x, Q_y], [-P_x, -P_y]].
/// Its determinant coincides with det J up to rounding, so definiteness is
/// readable off the field data without any reconstruction.
struct HessianReport {
    std::array<std::array<double, 2>, 2> h{};
    double det = 0.0;
    ExtremumKind kind = ExtremumKind::Indefinite;
    std::string diagnostic;
};

/// Requires |F(O)| <= 1e-6 (throws Error otherwise). With det > 0 the
/// sign of Q_x decides Min vs Max; det <= 0 or a vanishing Q_x is
/// reported Indefinite with a diagnostic. Either definite kind certifies
/// a local center.
HessianReport hessian_extremum(const FieldDef& field, Vec2 O);

/// Drift of H along a numerically integrated orbit.
struct ConservationReport {
    double max_drift = 0.0;  // max |H(x(t)) - H(x0)| over sampled times
    bool complete = false;   // whole time range stayed inside the grid
    double t_covered = 0.0;  // time actually checked
};

/// Integrates the orbit of x0 to t_end and samples H along it by bilinear
/// interpolation, densely within every accepted step. Stops at the first
/// sample outside the grid region and flags the result partial.
ConservationReport conservation_check(const FieldDef& field,
                                      const ScalarGrid& grid, Vec2 x0,
                                      double t_end,
                                      const IntegratorConfig& cfg = {});

/// CSV matrix of the grid values: ny lines, y ascending, x fastest.
std::string grid_csv(const ScalarGrid& grid);

/// JSON header describing the grid layout: region, spacing, base, sizes.
std::string grid_header_json(const ScalarGrid& grid);

}  // namespace planar
