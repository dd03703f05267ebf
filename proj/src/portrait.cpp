#include "planar/portrait.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <vector>

#include "planar/verify.hpp"

namespace planar {

namespace {

const double kTwoPi = 6.283185307179586476925287;

struct Mapper {
    Rect region;
    double width, height, pad;

    double px(double x) const {
        return pad + (x - region.xmin) / region.width() * (width - 2 * pad);
    }
    double py(double y) const {
        return pad + (region.ymax - y) / region.height() * (height - 2 * pad);
    }
};

void append(std::string& out, const char* fmt, ...)
    __attribute__((format(printf, 2, 3)));

void append(std::string& out, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    out += buf;
}

// Marching squares: segments of {f = 0} over the region, in px space.
std::string nullcline_path(const FieldDef& field, const Mapper& m, int grid,
                           bool q_component) {
    int n = grid + 1;
    std::vector<double> vals(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        double y = m.region.ymin + m.region.height() * j / grid;
        for (int i = 0; i < n; ++i) {
            double x = m.region.xmin + m.region.width() * i / grid;
            Vec2 v = eval_velocity(field, {x, y});
            vals[static_cast<std::size_t>(j) * n + i] = q_component ? v.y : v.x;
        }
    }

    std::string path;
    auto node_x = [&](int i) { return m.region.xmin + m.region.width() * i / grid; };
    auto node_y = [&](int j) { return m.region.ymin + m.region.height() * j / grid; };

    for (int j = 0; j < grid; ++j) {
        for (int i = 0; i < grid; ++i) {
            double v00 = vals[static_cast<std::size_t>(j) * n + i];
            double v10 = vals[static_cast<std::size_t>(j) * n + i + 1];
            double v01 = vals[static_cast<std::size_t>(j + 1) * n + i];
            double v11 = vals[static_cast<std::size_t>(j + 1) * n + i + 1];

            Vec2 hits[4];
            int nhit = 0;
            auto edge = [&](double va, double vb, Vec2 a, Vec2 b) {
                if ((va < 0.0) == (vb < 0.0)) return;
                double t = va / (va - vb);
                hits[nhit++] = {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
            };
            Vec2 p00{node_x(i), node_y(j)}, p10{node_x(i + 1), node_y(j)};
            Vec2 p01{node_x(i), node_y(j + 1)}, p11{node_x(i + 1), node_y(j + 1)};
            edge(v00, v10, p00, p10);
            edge(v10, v11, p10, p11);
            edge(v11, v01, p11, p01);
            edge(v01, v00, p01, p00);

            for (int k = 0; k + 1 < nhit; k += 2)
                append(path, "M%.6g %.6gL%.6g %.6g", m.px(hits[k].x),
                       m.py(hits[k].y), m.px(hits[k + 1].x), m.py(hits[k + 1].y));
        }
    }
    return path;
}

}  // namespace

PortraitResult render_portrait(const FieldDef& field, const Rect& region,
                               const PortraitConfig& cfg) {
    if (cfg.orbit_seeds < 0 || cfg.samples_per_orbit < 2 ||
        cfg.nullcline_grid < 2 || cfg.width < 64 || cfg.height < 64 ||
        !(cfg.t_span > 0.0))
        throw Error("portrait configuration out of range");

    Mapper m{region, double(cfg.width), double(cfg.height), 8.0};
    PortraitResult out;
    out.orbits_csv = "orbit,t,x,y\n";

    std::string svg;
    append(svg,
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
           "height=\"%d\" viewBox=\"0 0 %d %d\">\n",
           cfg.width, cfg.height, cfg.width, cfg.height);
    append(svg, "<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"#ffffff\"/>\n",
           cfg.width, cfg.height);
    append(svg,
           "<clipPath id=\"frame\"><rect x=\"%.6g\" y=\"%.6g\" width=\"%.6g\" "
           "height=\"%.6g\"/></clipPath>\n",
           m.pad, m.pad, cfg.width - 2 * m.pad, cfg.height - 2 * m.pad);
    svg += "<g clip-path=\"url(#frame)\">\n";

    // axes
    if (region.xmin < 0.0 && region.xmax > 0.0)
        append(svg,
               "<line x1=\"%.6g\" y1=\"%.6g\" x2=\"%.6g\" y2=\"%.6g\" "
               "stroke=\"#cccccc\" stroke-width=\"1\"/>\n",
               m.px(0), m.py(region.ymin), m.px(0), m.py(region.ymax));
    if (region.ymin < 0.0 && region.ymax > 0.0)
        append(svg,
               "<line x1=\"%.6g\" y1=\"%.6g\" x2=\"%.6g\" y2=\"%.6g\" "
               "stroke=\"#cccccc\" stroke-width=\"1\"/>\n",
               m.px(region.xmin), m.py(0), m.px(region.xmax), m.py(0));

    // nullclines
    std::string pn = nullcline_path(field, m, cfg.nullcline_grid, false);
    std::string qn = nullcline_path(field, m, cfg.nullcline_grid, true);
    if (!pn.empty())
        svg += "<path d=\"" + pn +
               "\" fill=\"none\" stroke=\"#2a9d8f\" stroke-width=\"1\" "
               "stroke-dasharray=\"4 3\"/>\n";
    if (!qn.empty())
        svg += "<path d=\"" + qn +
               "\" fill=\"none\" stroke=\"#e07a3f\" stroke-width=\"1\" "
               "stroke-dasharray=\"4 3\"/>\n";

    // orbit seeds on two rings around the region center
    Vec2 c = region.center();
    double half = 0.5 * std::min(region.width(), region.height());
    int n_outer = (cfg.orbit_seeds + 1) / 2;
    int n_inner = cfg.orbit_seeds - n_outer;
    std::vector<Vec2> seeds;
    for (int k = 0; k < n_outer; ++k) {
        double th = kTwoPi * k / std::max(n_outer, 1);
        seeds.push_back({c.x + 0.7 * half * std::cos(th),
                         c.y + 0.7 * half * std::sin(th)});
    }
    for (int k = 0; k < n_inner; ++k) {
        double th = kTwoPi * (k + 0.5) / std::max(n_inner, 1);
        seeds.push_back({c.x + 0.35 * half * std::cos(th),
                         c.y + 0.35 * half * std::sin(th)});
    }

    char row[128];
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        Trajectory traj;
        try {
            traj = integrate(field, seeds[s], cfg.t_span, cfg.integrator);
        } catch (const Error&) {
            continue;  // orbit left the representable range almost at once
        }
        double t_end = traj.t_final();
        std::string pts;
        for (int k = 0; k < cfg.samples_per_orbit; ++k) {
            double t = t_end * k / (cfg.samples_per_orbit - 1);
            Vec2 p = traj.state_at(t);
            append(pts, "%.6g,%.6g ", m.px(p.x), m.py(p.y));
            std::snprintf(row, sizeof row, "%zu,%.10g,%.10g,%.10g\n", s, t, p.x,
                          p.y);
            out.orbits_csv += row;
        }
        svg += "<polyline points=\"" + pts +
               "\" fill=\"none\" stroke=\"#355f8d\" stroke-width=\"1\"/>\n";
        append(svg, "<circle cx=\"%.6g\" cy=\"%.6g\" r=\"2\" fill=\"#355f8d\"/>\n",
               m.px(seeds[s].x), m.py(seeds[s].y));
        ++out.orbits;
    }

    // critical points
    CriticalPoints cp = find_critical_points(field, region);
    for (const Vec2& p : cp.points)
        append(svg, "<circle cx=\"%.6g\" cy=\"%.6g\" r=\"3\" fill=\"#c0392b\"/>\n",
               m.px(p.x), m.py(p.y));

    svg += "</g>\n";
    append(svg, "<rect x=\"%.6g\" y=\"%.6g\" width=\"%.6g\" height=\"%.6g\" "
                "fill=\"none\" stroke=\"#444444\"/>\n",
           m.pad, m.pad, cfg.width - 2 * m.pad, cfg.height - 2 * m.pad);
    append(svg, "<text x=\"%.6g\" y=\"%.6g\" font-family=\"monospace\" "
                "font-size=\"12\" fill=\"#444444\">%s</text>\n",
           m.pad + 4, cfg.height - m.pad - 6, field.name().c_str());
    svg += "</svg>\n";

    out.svg = std::move(svg);
    return out;
}

}  // namespace planar
