#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "planar/classify.hpp"
#include "planar/field.hpp"
#include "planar/flow.hpp"
#include "planar/geometry.hpp"
#include "planar/hamiltonian.hpp"
#include "planar/verify.hpp"

namespace planar {

/// Bumped whenever an emitted JSON shape changes; the schema file shipped
/// with the repo tracks the same number.
inline constexpr int kReportSchemaVersion = 1;

/// Envelope options shared by every report kind.
struct ReportMeta {
    std::string kind;
    std::uint64_t seed = 0;
    bool timestamp = true;  // false pins byte-identical output
};

nlohmann::ordered_json point_json(Vec2 p);
nlohmann::ordered_json region_json(const Rect& region);
nlohmann::ordered_json field_json(const FieldDef& field);
nlohmann::ordered_json verification_json(const VerificationReport& report);
nlohmann::ordered_json classification_json(const Classification& c);
nlohmann::ordered_json liouville_json(const Polygon& poly, const LiouvilleResult& r);
nlohmann::ordered_json hessian_json(const HessianReport& h);
nlohmann::ordered_json conservation_json(const ConservationReport& r, Vec2 x0,
                                         double t_end);
nlohmann::ordered_json grid_meta_json(const ScalarGrid& g);

/// schema_version, kind, optional generated_at (UTC), seed, field.
nlohmann::ordered_json report_envelope(const ReportMeta& meta, const FieldDef& field);

/// Two-space indented dump with a trailing newline.
std::string dump_report(const nlohmann::ordered_json& j);

}  // namespace planar
