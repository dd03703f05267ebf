#include "planar/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "json.hpp"
#include "planar/interval.hpp"

namespace planar {

namespace {

constexpr double kFlatTol = 1e-12;  // certified |T| bound for reconstruction
constexpr double kLegTol = 5e-11;   // quadrature budget per path leg

template <class F>
double simpson_rec(const F& f, double a, double m, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth >= 40 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

// Signed integral of f over [a, b] with |error| <= tol, roughly.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a);
    double fm = f(m);
    double fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, 0);
}

// Certifies sup |T| <= kFlatTol over the rectangle by branch and bound on
// interval enclosures. Throws when some box can neither be certified nor
// split further: the line integral is path dependent there.
void require_flat_trace(const FieldDef& field, const Rect& region) {
    struct Item {
        Rect box;
        int depth;
    };
    std::vector<Item> stack{{region, 0}};
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        bool enclosed = false;
        Interval tr;
        try {
            tr = interval_jet(field, it.box).trace;
            enclosed = true;
        } catch (const EnclosureError&) {
        }
        if (enclosed && tr.lo >= -kFlatTol && tr.hi <= kFlatTol) continue;
        if (it.depth >= 16) {
            char buf[176];
            std::snprintf(buf, sizeof buf,
                          "reconstruction refused: cannot certify a vanishing "
                          "trace on the region (stuck near [%g,%g]x[%g,%g])",
                          it.box.xmin, it.box.xmax, it.box.ymin, it.box.ymax);
            throw Error(buf);
        }
        if (it.box.width() >= it.box.height()) {
            double xm = 0.5 * (it.box.xmin + it.box.xmax);
            stack.push_back(
                {Rect(it.box.xmin, xm, it.box.ymin, it.box.ymax), it.depth + 1});
            stack.push_back(
                {Rect(xm, it.box.xmax, it.box.ymin, it.box.ymax), it.depth + 1});
        } else {
            double ym = 0.5 * (it.box.ymin + it.box.ymax);
            stack.push_back(
                {Rect(it.box.xmin, it.box.xmax, it.box.ymin, ym), it.depth + 1});
            stack.push_back(
                {Rect(it.box.xmin, it.box.xmax, ym, it.box.ymax), it.depth + 1});
        }
    }
}

}  // namespace

double ScalarGrid::interpolate(Vec2 p) const {
    if (nx < 2 || ny < 2 ||
        values.size() != static_cast<std::size_t>(nx) * ny)
        throw Error("grid is not initialized");
    if (!contains(p)) throw Error("interpolation point is outside the grid");
    double fx = (p.x - region.xmin) / dx();
    double fy = (p.y - region.ymin) / dy();
    int i = std::clamp(static_cast<int>(fx), 0, nx - 2);
    int j = std::clamp(static_cast<int>(fy), 0, ny - 2);
    double tx = fx - i;
    double ty = fy - j;
    double lo = (1.0 - tx) * value(i, j) + tx * value(i + 1, j);
    double hi = (1.0 - tx) * value(i, j + 1) + tx * value(i + 1, j + 1);
    return (1.0 - ty) * lo + ty * hi;
}

ScalarGrid reconstruct_hamiltonian(const FieldDef& field, Vec2 base,
                                   const Rect& region, int n,
                                   PathOrder order) {
    if (n < 2) throw Error("grid size must be at least 2");
    if (!region.contains(base))
        throw Error("base point must lie inside the region");
    require_flat_trace(field, region);

    ScalarGrid g;
    g.region = region;
    g.nx = g.ny = n;
    g.base = base;
    g.values.assign(static_cast<std::size_t>(n) * n, 0.0);

    // Second legs accumulate node to node outward from the base line, so
    // the per-node quadrature error stays at kLegTol + n * seg_tol no
    // matter how fine the grid is.
    const double seg_tol = kLegTol / n;
    auto p_at = [&field](Vec2 v) { return eval_velocity(field, v).x; };
    auto q_at = [&field](Vec2 v) { return eval_velocity(field, v).y; };

    if (order == PathOrder::XFirst) {
        int j0 = 0;
        while (j0 < n && g.node(0, j0).y < base.y) ++j0;
        for (int i = 0; i < n; ++i) {
            double x = g.node(i, 0).x;
            double xleg = adaptive_simpson(
                [&](double s) { return q_at({s, base.y}); }, base.x, x, kLegTol);
            double acc = 0.0;
            double prev = base.y;
            for (int j = j0; j < n; ++j) {
                double y = g.node(i, j).y;
                acc += adaptive_simpson([&](double t) { return p_at({x, t}); },
                                        prev, y, seg_tol);
                prev = y;
                g.value(i, j) = xleg - acc;
            }
            acc = 0.0;
            prev = base.y;
            for (int j = j0 - 1; j >= 0; --j) {
                double y = g.node(i, j).y;
                acc += adaptive_simpson([&](double t) { return p_at({x, t}); },
                                        prev, y, seg_tol);
                prev = y;
                g.value(i, j) = xleg - acc;
            }
        }
        return g;
    }

    int i0 = 0;
    while (i0 < n && g.node(i0, 0).x < base.x) ++i0;
    for (int j = 0; j < n; ++j) {
        double y = g.node(0, j).y;
        double yleg = adaptive_simpson(
            [&](double t) { return p_at({base.x, t}); }, base.y, y, kLegTol);
        double acc = 0.0;
        double prev = base.x;
        for (int i = i0; i < n; ++i) {
            double x = g.node(i, 0).x;
            acc += adaptive_simpson([&](double s) { return q_at({s, y}); },
                                    prev, x, seg_tol);
            prev = x;
            g.value(i, j) = acc - yleg;
        }
        acc = 0.0;
        prev = base.x;
        for (int i = i0 - 1; i >= 0; --i) {
            double x = g.node(i, 0).x;
            acc += adaptive_simpson([&](double s) { return q_at({s, y}); },
                                    prev, x, seg_tol);
            prev = x;
            g.value(i, j) = acc - yleg;
        }
    }
    return g;
}

double hamiltonian_value(const FieldDef& field, Vec2 base, Vec2 p,
                         PathOrder order) {
    auto p_at = [&field](Vec2 v) { return eval_velocity(field, v).x; };
    auto q_at = [&field](Vec2 v) { return eval_velocity(field, v).y; };
    if (order == PathOrder::XFirst) {
        double along_x = adaptive_simpson(
            [&](double s) { return q_at({s, base.y}); }, base.x, p.x, kLegTol);
        double along_y = adaptive_simpson(
            [&](double t) { return p_at({p.x, t}); }, base.y, p.y, kLegTol);
        return along_x - along_y;
    }
    double along_y = adaptive_simpson(
        [&](double t) { return p_at({base.x, t}); }, base.y, p.y, kLegTol);
    double along_x = adaptive_simpson(
        [&](double s) { return q_at({s, p.y}); }, base.x, p.x, kLegTol);
    return along_x - along_y;
}

double hamiltonian_residual(const FieldDef& field, const ScalarGrid& grid,
                            int samples, std::uint64_t seed) {
    if (samples < 1) throw Error("residual needs at least one sample");
    if (grid.nx < 3 || grid.ny < 3 ||
        grid.values.size() != static_cast<std::size_t>(grid.nx) * grid.ny)
        throw Error("residual needs an initialized grid of at least 3x3 nodes");
    std::mt19937_64 gen(seed);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        int i = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(grid.nx - 2));
        int j = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(grid.ny - 2));
        Vec2 v = eval_velocity(field, grid.node(i, j));
        double hx = (grid.value(i + 1, j) - grid.value(i - 1, j)) / (2.0 * grid.dx());
        double hy = (grid.value(i, j + 1) - grid.value(i, j - 1)) / (2.0 * grid.dy());
        worst = std::max(worst, std::abs(v.x + hy) + std::abs(v.y - hx));
    }
    return worst;
}

const char* to_string(ExtremumKind k) {
    switch (k) {
        case ExtremumKind::Min: return "MIN";
        case ExtremumKind::Max: return "MAX";
        case ExtremumKind::Indefinite: return "INDEFINITE";
    }
    return "INDEFINITE";
}

HessianReport hessian_extremum(const FieldDef& field, Vec2 O) {
    Vec2 f = eval_velocity(field, O);
    if (std::hypot(f.x, f.y) > 1e-6)
        throw Error("hessian test needs a critical point: |F(O)| > 1e-6");
    JetSample js = jet(field, O);
    HessianReport rep;
    rep.h = {{{js.jac[1][0], js.jac[1][1]}, {-js.jac[0][0], -js.jac[0][1]}}};
    rep.det = rep.h[0][0] * rep.h[1][1] - rep.h[0][1] * rep.h[1][0];
    double qx = rep.h[0][0];
    if (rep.det > 0.0 && qx > 0.0) {
        rep.kind = ExtremumKind::Min;
    } else if (rep.det > 0.0 && qx < 0.0) {
        rep.kind = ExtremumKind::Max;
    } else if (rep.det > 0.0) {
        rep.kind = ExtremumKind::Indefinite;
        rep.diagnostic = "Q_x vanishes at the critical point, the definiteness "
                         "test is silent here";
    } else {
        rep.kind = ExtremumKind::Indefinite;
        rep.diagnostic = "Hessian determinant is not positive, which already "
                         "violates D > 0 at the critical point";
    }
    return rep;
}

ConservationReport conservation_check(const FieldDef& field,
                                      const ScalarGrid& grid, Vec2 x0,
                                      double t_end,
                                      const IntegratorConfig& cfg) {
    if (!std::isfinite(t_end) || t_end <= 0.0)
        throw Error("t_end must be positive and finite");
    ConservationReport rep;
    if (!grid.contains(x0)) return rep;
    double h0 = grid.interpolate(x0);
    Trajectory traj = integrate(field, x0, t_end, cfg);
    rep.complete = traj.status == FlowStatus::Completed;
    for (const DenseStep& st : traj.steps) {
        for (int k = 1; k <= 8; ++k) {
            double t = st.t0 + st.h * (k / 8.0);
            Vec2 p = st.eval(t);
            if (!grid.contains(p)) {
                rep.complete = false;
                return rep;
            }
            rep.max_drift = std::max(rep.max_drift, std::abs(grid.interpolate(p) - h0));
            rep.t_covered = t;
        }
    }
    return rep;
}

std::string grid_csv(const ScalarGrid& grid) {
    std::string out;
    out.reserve(static_cast<std::size_t>(grid.nx) * grid.ny * 20);
    char buf[32];
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", grid.value(i, j));
            if (i) out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

std::string grid_header_json(const ScalarGrid& grid) {
    nlohmann::ordered_json j;
    j["nx"] = grid.nx;
    j["ny"] = grid.ny;
    j["region"] = {{"xmin", grid.region.xmin},
                   {"xmax", grid.region.xmax},
                   {"ymin", grid.region.ymin},
                   {"ymax", grid.region.ymax}};
    j["spacing"] = {{"dx", grid.dx()}, {"dy", grid.dy()}};
    j["base"] = {{"x", grid.base.x}, {"y", grid.base.y}};
    return j.dump(2) + "\n";
}

}  // namespace planar
