#include "planar/report.hpp"

#include <chrono>
#include <ctime>

namespace planar {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string utc_now() {
    std::time_t now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json witness_json(const JetSample& w) {
    ordered_json j;
    j["x"] = w.point.x;
    j["y"] = w.point.y;
    j["p"] = w.value.x;
    j["q"] = w.value.y;
    j["trace"] = w.trace;
    j["det"] = w.det;
    return j;
}

ordered_json polyline_json(const std::vector<Vec2>& pts) {
    ordered_json arr = ordered_json::array();
    for (const Vec2& p : pts) arr.push_back({p.x, p.y});
    return arr;
}

}  // namespace

ordered_json point_json(Vec2 p) {
    ordered_json j;
    j["x"] = p.x;
    j["y"] = p.y;
    return j;
}

ordered_json region_json(const Rect& region) {
    ordered_json j;
    j["xmin"] = region.xmin;
    j["xmax"] = region.xmax;
    j["ymin"] = region.ymin;
    j["ymax"] = region.ymax;
    return j;
}

ordered_json field_json(const FieldDef& field) {
    ordered_json j;
    j["name"] = field.name();
    j["builtin"] = field.is_builtin();
    j["analytic"] = field.analytic();
    ordered_json params = ordered_json::object();
    const auto& names = field.param_names();
    const auto& values = field.param_values();
    for (std::size_t i = 0; i < names.size(); ++i) params[names[i]] = values[i];
    j["params"] = params;
    return j;
}

ordered_json verification_json(const VerificationReport& report) {
    ordered_json j;
    j["property"] = to_string(report.property);
    j["status"] = to_string(report.status);
    j["min_margin"] = report.min_margin;
    j["boxes_processed"] = report.boxes_processed;
    j["samples_checked"] = report.samples_checked;
    j["uncertified_area"] = report.uncertified_area;
    j["witness"] = report.witness ? witness_json(*report.witness)
                                  : ordered_json(nullptr);
    j["note"] = report.note;
    return j;
}

ordered_json classification_json(const Classification& c) {
    ordered_json j;
    j["verdict"] = to_string(c.verdict);
    j["critical_point"] = point_json(c.critical_point);
    j["region"] = region_json(c.region);
    j["analytic_used"] = c.analytic_used;
    j["region_limited"] = c.region_limited;

    ordered_json hyp = ordered_json::array();
    for (const VerificationReport& rep : c.hypotheses)
        hyp.push_back(verification_json(rep));
    j["hypotheses"] = hyp;

    ordered_json trace;
    trace["verdict"] = to_string(c.trace_near.verdict);
    trace["sup_abs_trace"] = c.trace_near.sup_abs_trace;
    trace["boxes_processed"] = c.trace_near.boxes_processed;
    trace["witness"] = c.trace_near.witness ? witness_json(*c.trace_near.witness)
                                            : ordered_json(nullptr);
    j["trace_near"] = trace;

    ordered_json closure;
    closure["verdict"] = to_string(c.closure.verdict);
    closure["witness"] = c.closure.witness ? point_json(*c.closure.witness)
                                           : ordered_json(nullptr);
    closure["witness_trace"] = c.closure.witness_trace;
    closure["innermost_radius"] = c.closure.innermost_radius;
    j["closure_t_minus"] = closure;

    if (c.annulus) {
        ordered_json a;
        a["status"] = to_string(c.annulus->status);
        a["radius"] = c.annulus->radius;
        a["band"] = {{"lo", c.annulus->band.lo}, {"hi", c.annulus->band.hi}};
        a["diagnostic"] = c.annulus->diagnostic;
        j["annulus"] = a;
    } else {
        j["annulus"] = nullptr;
    }

    j["attractor_radius"] =
        c.attractor_radius ? ordered_json(*c.attractor_radius) : ordered_json(nullptr);
    j["attractor_cycle"] = polyline_json(c.attractor_cycle);

    if (c.gas) {
        ordered_json g;
        g["converged"] = c.gas->converged;
        g["total"] = c.gas->total;
        g["max_entry_time"] = c.gas->max_entry_time;
        g["failures"] = polyline_json(c.gas->failures);
        j["gas_probes"] = g;
    } else {
        j["gas_probes"] = nullptr;
    }

    j["diagnostic"] = c.diagnostic;
    return j;
}

ordered_json liouville_json(const Polygon& poly, const LiouvilleResult& r) {
    ordered_json j;
    j["polygon"] = polyline_json(poly.vertices());
    j["dA_dt"] = r.dA_dt;
    j["integral_T"] = r.integral_T;
    j["residual"] = r.residual;
    return j;
}

ordered_json hessian_json(const HessianReport& h) {
    ordered_json j;
    j["matrix"] = {{h.h[0][0], h.h[0][1]}, {h.h[1][0], h.h[1][1]}};
    j["det"] = h.det;
    j["kind"] = to_string(h.kind);
    j["diagnostic"] = h.diagnostic;
    return j;
}

ordered_json conservation_json(const ConservationReport& r, Vec2 x0, double t_end) {
    ordered_json j;
    j["x0"] = point_json(x0);
    j["t_end"] = t_end;
    j["max_drift"] = r.max_drift;
    j["complete"] = r.complete;
    j["t_covered"] = r.t_covered;
    return j;
}

ordered_json grid_meta_json(const ScalarGrid& g) {
    return ordered_json::parse(grid_header_json(g));
}

ordered_json report_envelope(const ReportMeta& meta, const FieldDef& field) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = meta.kind;
    if (meta.timestamp) j["generated_at"] = utc_now();
    j["seed"] = meta.seed;
    j["field"] = field_json(field);
    return j;
}

std::string dump_report(const nlohmann::ordered_json& j) {
    return j.dump(2) + "\n";
}

}  // namespace planar
