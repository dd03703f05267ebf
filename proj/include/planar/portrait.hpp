#pragma once

#include <string>

#include "planar/field.hpp"
#include "planar/flow.hpp"
#include "planar/geometry.hpp"

namespace planar {

struct PortraitConfig {
    int orbit_seeds = 12;       // seeds spread over two rings in the region
    double t_span = 30.0;       // forward integration time per orbit
    int samples_per_orbit = 256;
    int nullcline_grid = 160;   // marching-squares resolution per axis
    int width = 640;            // pixel size of the SVG canvas
    int height = 640;
    IntegratorConfig integrator{};
};

struct PortraitResult {
    std::string svg;
    std::string orbits_csv;  // "orbit,t,x,y" rows
    long orbits = 0;
};

/// Static phase portrait: orbit polylines from a deterministic seed
/// layout, P- and Q-nullclines by marching squares, critical points, and
/// the region frame. Pure function of its arguments.
PortraitResult render_portrait(const FieldDef& field, const Rect& region,
                               const PortraitConfig& cfg = {});

}  // namespace planar
