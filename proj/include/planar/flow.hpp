#pragma once

#include <string>
#include <variant>
#include <vector>

#include "planar/field.hpp"
#include "planar/geometry.hpp"

namespace planar {

struct IntegratorConfig {
    double rtol = 1e-9;
    double atol = 1e-12;
    double h_init = 1e-3;
    double h_max = 1.0;
    long max_steps = 1000000;
};

enum class FlowStatus { Completed, Event, StepLimit, Blowup, NotFound };
const char* to_string(FlowStatus s);

/// One accepted step's interpolation coefficients (quartic in the step
/// fraction). eval is valid for t in [t0, t0+h].
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    Vec2 c1, c2, c3, c4, c5;

    Vec2 eval(double t) const {
        double th = (t - t0) / h;
        double om = 1.0 - th;
        return c1 + th * (c2 + om * (c3 + th * (c4 + om * c5)));
    }
};

/// Forward orbit of the flow. times[0]=0 and states[0]=x0; steps[i]
/// interpolates between times[i] and times[i+1].
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec2> states;
    std::vector<DenseStep> steps;
    FlowStatus status = FlowStatus::Completed;

    double t_final() const { return times.back(); }
    Vec2 final_state() const { return states.back(); }

    /// Dense-output interpolation, clamped to [0, t_final].
    Vec2 state_at(double t) const;
};

/// Integrates dx/dt = F(x) from x0 over [0, t_end] with an embedded
/// Dormand-Prince 5(4) pair, error-per-step control
/// err <= atol + rtol*|state|, and quartic dense output. Backward time is
/// integrated by negating the field and flipping t_end's sign at the call
/// site. Deterministic.
Trajectory integrate(const FieldDef& field, Vec2 x0, double t_end,
                     const IntegratorConfig& cfg = {});

/// Events for integrate_until_event. A ray crossing counts only when the
/// orbit crosses the open ray {base + r*dir, r > 0} transversally; the
/// initial instant never counts. Enter/exit events fire immediately when
/// the start state already satisfies them.
struct RayCrossing {
    Vec2 base;
    Vec2 dir;  // need not be normalized; zero direction is rejected
};
struct EnterBall {
    Vec2 center;
    double rho = 0.0;
};
struct ExitBox {
    Rect box;
};
using Event = std::variant<RayCrossing, EnterBall, ExitBox>;

struct EventResult {
    Vec2 state;
    double time = 0.0;
    FlowStatus status = FlowStatus::NotFound;  // Event | NotFound | Blowup
    double ray_r = 0.0;  // crossing parameter, RayCrossing only
};

/// Runs until the event fires, locating the event time on the dense output
/// to 1e-10. NotFound after max_steps accepted steps without an event.
EventResult integrate_until_event(const FieldDef& field, Vec2 x0, const Event& event,
                                  const IntegratorConfig& cfg = {});

/// Advances every vertex by time t (either sign; t=0 returns the input).
/// When adjacent image vertices separate beyond twice the source spacing,
/// midpoints of the source edge are inserted and advanced too. Throws if
/// any vertex trajectory blows up or hits the step limit.
Polygon transport_polygon(const FieldDef& field, const Polygon& poly, double t,
                          const IntegratorConfig& cfg = {});

struct LiouvilleResult {
    double dA_dt = 0.0;
    double integral_T = 0.0;
    double residual = 0.0;
};

/// Checks the area identity dA/dt = integral of T over the enclosed region
/// at t=0: dA_dt by central difference (h=1e-3) of transported shoelace
/// areas, integral_T by degree-5 quadrature on a centroid fan of the
/// polygon (densified to >= 256 vertices first).
LiouvilleResult liouville_residual(const FieldDef& field, const Polygon& poly,
                                   const IntegratorConfig& cfg = {});

/// CSV exports. Trajectories serialize as "t,x,y" rows with a header;
/// polygons as an "x,y" ring (first vertex not repeated).
std::string trajectory_csv(const Trajectory& traj);
std::string polygon_csv(const Polygon& poly);

}  // namespace planar
