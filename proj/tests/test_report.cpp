#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "doctest.h"
#include "planar/classify.hpp"
#include "planar/field.hpp"
#include "planar/flow.hpp"
#include "planar/hamiltonian.hpp"
#include "planar/report.hpp"
#include "planar/verify.hpp"
#include "schema_check.hpp"

using namespace planar;
using ordered_json = nlohmann::ordered_json;
using nlohmann::json;

namespace {

json load_schema() {
    std::ifstream in(PLANARSTAB_SCHEMA);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return json::parse(ss.str());
}

void check_valid(const json& doc) {
    static const json schema = load_schema();
    std::string err = schema_check::validate_report(schema, doc);
    INFO(err);
    CHECK(err.empty());
}

}  // namespace

TEST_SUITE("reports") {

TEST_CASE("the envelope pins the schema header") {
    FieldDef field = FieldDef::builtin(BuiltinField::LinearRotation);
    ReportMeta meta;
    meta.kind = "verify";
    meta.seed = 42;

    ordered_json j = report_envelope(meta, field);
    CHECK(j["schema_version"] == 1);
    CHECK(j["kind"] == "verify");
    CHECK(j["seed"] == 42);
    CHECK(j["field"]["name"] == "LINEAR_ROTATION");
    CHECK(j["field"]["builtin"] == true);
    CHECK(j["field"]["analytic"] == true);
    CHECK(j["field"]["params"].is_object());

    // generated_at is a UTC second-resolution stamp.
    REQUIRE(j.contains("generated_at"));
    std::regex iso(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z)");
    CHECK(std::regex_match(j["generated_at"].get<std::string>(), iso));

    meta.timestamp = false;
    ordered_json bare = report_envelope(meta, field);
    CHECK(!bare.contains("generated_at"));

    // Key order is fixed by construction, so the dump is reproducible.
    std::string text = dump_report(bare);
    CHECK(text == dump_report(bare));
    CHECK(text.rfind("{\n  \"schema_version\": 1,\n  \"kind\": \"verify\"", 0) == 0);
    CHECK(text.back() == '\n');
}

TEST_CASE("verification reports serialize and validate") {
    FieldDef field = parse_field("P = x ; Q = y", {});
    Rect region(-1, 1, -1, 1);
    std::vector<VerificationReport> reports = verify_hypotheses(field, region);
    REQUIRE(reports.size() == 3);

    ReportMeta meta;
    meta.kind = "verify";
    meta.timestamp = false;
    ordered_json j = report_envelope(meta, field);
    j["region"] = region_json(region);
    ordered_json arr = ordered_json::array();
    for (const VerificationReport& r : reports) arr.push_back(verification_json(r));
    j["reports"] = arr;

    check_valid(j);
    CHECK(j["region"]["xmin"] == -1.0);
    CHECK(j["reports"][0]["property"] == "DET_POSITIVE");
    CHECK(j["reports"][0]["witness"].is_null());
    CHECK(j["reports"][1]["property"] == "TRACE_NONPOSITIVE");
    CHECK(j["reports"][1]["status"] == "VIOLATED");
    REQUIRE(j["reports"][1]["witness"].is_object());
    CHECK(j["reports"][1]["witness"]["trace"].get<double>() > 0.0);
}

TEST_CASE("classification reports serialize and validate") {
    Rect region(-2, 2, -2, 2);

    SUBCASE("analytic global center") {
        FieldDef field = FieldDef::builtin(BuiltinField::LinearRotation);
        Classification c = classify_critical_point(field, {0, 0}, region);
        ordered_json j = classification_json(c);

        ReportMeta meta;
        meta.kind = "classify";
        meta.timestamp = false;
        ordered_json env = report_envelope(meta, field);
        env["region"] = region_json(region);
        env["critical_points"] = ordered_json::array({{0.0, 0.0}});
        env["classifications"] = ordered_json::array({j});
        check_valid(env);

        CHECK(j["verdict"] == "GLOBAL_CENTER");
        CHECK(j["analytic_used"] == true);
        CHECK(j["annulus"].is_null());
        CHECK(j["attractor_radius"].is_null());
        CHECK(j["gas_probes"].is_null());
        CHECK(j["attractor_cycle"].is_array());
        CHECK(j["trace_near"]["verdict"] == "true");
        CHECK(j["closure_t_minus"]["verdict"] == "false");
    }

    SUBCASE("attractor with an annulus certificate") {
        FieldDef field = FieldDef::builtin(BuiltinField::BumpAnnulus);
        Rect wide(-5, 5, -5, 5);
        Classification c = classify_critical_point(field, {0, 0}, wide);
        ordered_json j = classification_json(c);

        ReportMeta meta;
        meta.kind = "classify";
        meta.timestamp = false;
        ordered_json env = report_envelope(meta, field);
        env["region"] = region_json(wide);
        env["classifications"] = ordered_json::array({j});
        check_valid(env);

        CHECK(j["verdict"] == "CENTER_WITH_COMPACT_ATTRACTOR");
        REQUIRE(j["annulus"].is_object());
        CHECK(j["annulus"]["status"] == "FOUND");
        CHECK(j["annulus"]["band"]["lo"].get<double>() <
              j["annulus"]["band"]["hi"].get<double>());
        CHECK(j["attractor_radius"].get<double>() == doctest::Approx(1.0).epsilon(0.01));
        CHECK(j["attractor_cycle"].size() == 256);
        CHECK(j["attractor_cycle"][0].size() == 2);
    }

    SUBCASE("gas point with probe evidence") {
        FieldDef field = FieldDef::builtin(BuiltinField::CubicDamped);
        ClassifyConfig cfg;
        cfg.gas_angles = 2;
        Classification c = classify_critical_point(field, {0, 0}, region, cfg);
        ordered_json j = classification_json(c);

        ReportMeta meta;
        meta.kind = "classify";
        meta.timestamp = false;
        ordered_json env = report_envelope(meta, field);
        env["region"] = region_json(region);
        env["classifications"] = ordered_json::array({j});
        check_valid(env);

        CHECK(j["verdict"] == "GAS_POINT");
        REQUIRE(j["gas_probes"].is_object());
        CHECK(j["gas_probes"]["converged"] == j["gas_probes"]["total"]);
        CHECK(j["gas_probes"]["failures"].empty());
        CHECK(j["closure_t_minus"]["verdict"] == "true");
        REQUIRE(j["closure_t_minus"]["witness"].is_object());
        CHECK(j["closure_t_minus"]["witness"].contains("x"));
        CHECK(j["hypotheses"].size() == 3);
    }
}

TEST_CASE("liouville and hamiltonian payloads validate") {
    ReportMeta meta;
    meta.timestamp = false;

    SUBCASE("area derivative") {
        FieldDef field = FieldDef::builtin(BuiltinField::CubicDamped);
        Polygon poly({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
        LiouvilleResult r = liouville_residual(field, poly);

        meta.kind = "liouville";
        ordered_json j = report_envelope(meta, field);
        j.update(liouville_json(poly, r));
        check_valid(j);

        CHECK(j["polygon"].size() == 4);
        CHECK(j["dA_dt"].is_number());
        CHECK(j["integral_T"] == doctest::Approx(-4.0));
        CHECK(j["residual"].get<double>() < 1e-3);
    }

    SUBCASE("reconstruction summary") {
        FieldDef field = FieldDef::builtin(BuiltinField::LinearRotation);
        Rect region(-1, 1, -1, 1);
        ScalarGrid grid = reconstruct_hamiltonian(field, {0, 0}, region, 65);
        ConservationReport cons = conservation_check(field, grid, {0.5, 0}, 5.0);

        meta.kind = "hamiltonian";
        ordered_json j = report_envelope(meta, field);
        j["region"] = region_json(region);
        j["grid"] = grid_meta_json(grid);
        j["residual"] = hamiltonian_residual(field, grid, 50, 1);
        j["residual_samples"] = 50;
        j["hessian"] = hessian_json(hessian_extremum(field, {0, 0}));
        j["conservation"] = conservation_json(cons, {0.5, 0}, 5.0);
        check_valid(j);

        CHECK(j["grid"]["nx"] == 65);
        CHECK(j["grid"]["spacing"]["dx"].get<double>() == doctest::Approx(2.0 / 64));
        CHECK(j["hessian"]["kind"] == "MIN");
        CHECK(j["hessian"]["matrix"].size() == 2);
        CHECK(j["conservation"]["complete"] == true);
        CHECK(j["conservation"]["x0"]["x"] == 0.5);
    }
}

TEST_CASE("the schema validator rejects malformed documents") {
    json schema = load_schema();

    FieldDef field = FieldDef::builtin(BuiltinField::LinearRotation);
    ReportMeta meta;
    meta.kind = "verify";
    meta.timestamp = false;
    ordered_json j = report_envelope(meta, field);
    j["region"] = region_json(Rect(-1, 1, -1, 1));
    j["reports"] = ordered_json::array();
    REQUIRE(schema_check::validate_report(schema, j).empty());

    json missing = j;
    missing.erase("kind");
    CHECK(schema_check::validate_report(schema, missing).find("kind") !=
          std::string::npos);

    json bad_enum = j;
    bad_enum["kind"] = "survey";
    CHECK(schema_check::validate_report(schema, bad_enum).find("enum") !=
          std::string::npos);

    json bad_type = j;
    bad_type["seed"] = "seven";
    CHECK(schema_check::validate_report(schema, bad_type).find("type mismatch") !=
          std::string::npos);

    json bad_region = j;
    bad_region["region"].erase("ymax");
    CHECK(!schema_check::validate_report(schema, bad_region).empty());

    json bad_branch = j;
    bad_branch["reports"] = json::array({42});
    CHECK(!schema_check::validate_report(schema, bad_branch).empty());
}

}  // TEST_SUITE
