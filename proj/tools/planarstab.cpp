#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "planar/classify.hpp"
#include "planar/field.hpp"
#include "planar/flow.hpp"
#include "planar/hamiltonian.hpp"
#include "planar/poincare.hpp"
#include "planar/portrait.hpp"
#include "planar/report.hpp"
#include "planar/verify.hpp"

namespace fs = std::filesystem;
using namespace planar;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
    std::string builtin;
    std::string field_file;
    std::string region;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool no_timestamp = false;
    bool analytic = false;
    std::vector<std::string> params;
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos != s.size()) throw Error("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw Error("not a number: '" + s + "'");
    }
}

std::vector<double> split_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item)));
    return out;
}

Rect parse_region(const std::string& s) {
    std::vector<double> v = split_doubles(s);
    if (v.size() != 4) throw Error("--region needs xmin,xmax,ymin,ymax");
    return Rect(v[0], v[1], v[2], v[3]);
}

Vec2 parse_point(const std::string& s, const char* what) {
    std::vector<double> v = split_doubles(s);
    if (v.size() != 2) throw Error(std::string(what) + " needs x,y");
    return {v[0], v[1]};
}

FieldDef load_field_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open field file: " + path);
    std::map<std::string, double> params;
    std::string src, line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.rfind("param ", 0) == 0) {
            std::size_t eq = t.find('=');
            if (eq == std::string::npos)
                throw Error("bad param line (want 'param name = value'): " + t);
            params[trim(t.substr(6, eq - 6))] = to_double(trim(t.substr(eq + 1)));
        } else {
            src += t;
            src += '\n';
        }
    }
    return parse_field(src, params);
}

FieldDef load_field(const CommonOpts& o) {
    if (o.builtin.empty() == o.field_file.empty())
        throw Error("exactly one of --builtin or --field is required");
    FieldDef field = [&] {
        if (!o.builtin.empty()) {
            if (o.builtin == "linear_rotation")
                return FieldDef::builtin(BuiltinField::LinearRotation);
            if (o.builtin == "cubic_damped")
                return FieldDef::builtin(BuiltinField::CubicDamped);
            if (o.builtin == "bump_annulus")
                return FieldDef::builtin(BuiltinField::BumpAnnulus);
            throw Error("unknown builtin '" + o.builtin +
                        "' (linear_rotation, cubic_damped, bump_annulus)");
        }
        return load_field_file(o.field_file);
    }();
    for (const std::string& spec : o.params) {
        std::size_t eq = spec.find('=');
        if (eq == std::string::npos)
            throw Error("--param wants name=value, got '" + spec + "'");
        field.set_param(trim(spec.substr(0, eq)), to_double(trim(spec.substr(eq + 1))));
    }
    if (o.analytic) field.set_analytic(true);
    return field;
}

fs::path out_dir(const CommonOpts& o) {
    if (!o.out_dir.empty()) return o.out_dir;
    if (const char* env = std::getenv("PLANARSTAB_OUT_DIR"); env && *env)
        return env;
    return ".";
}

void write_file(const fs::path& dir, const std::string& name,
                const std::string& content) {
    fs::create_directories(dir);
    fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << content;
    if (!out) throw Error("short write on " + p.string());
}

ReportMeta meta_for(const CommonOpts& o, const char* kind) {
    ReportMeta m;
    m.kind = kind;
    m.seed = o.seed;
    m.timestamp = !o.no_timestamp;
    return m;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool need_region) {
    cmd->add_option("--builtin", o.builtin,
                    "builtin field: linear_rotation, cubic_damped, bump_annulus");
    cmd->add_option("--field", o.field_file,
                    "field file with 'P = ...', 'Q = ...' and optional "
                    "'param name = value' lines");
    auto* reg = cmd->add_option("--region", o.region, "region as xmin,xmax,ymin,ymax");
    if (need_region) reg->required();
    cmd->add_option("--out-dir", o.out_dir,
                    "output directory (default: $PLANARSTAB_OUT_DIR or '.')");
    cmd->add_option("--seed", o.seed, "seed recorded in reports and used for sampling");
    cmd->add_flag("--no-timestamp", o.no_timestamp,
                  "omit generated_at for byte-reproducible output");
    cmd->add_flag("--analytic", o.analytic, "declare the field real-analytic");
    cmd->add_option("--param", o.params, "override a field parameter, name=value");
}

int run_verify(const CommonOpts& o) {
    FieldDef field = load_field(o);
    Rect region = parse_region(o.region);
    std::vector<VerificationReport> reports = verify_hypotheses(field, region);

    ordered_json j = report_envelope(meta_for(o, "verify"), field);
    j["region"] = region_json(region);
    ordered_json arr = ordered_json::array();
    bool violated = false;
    for (const VerificationReport& r : reports) {
        arr.push_back(verification_json(r));
        violated = violated || r.status == VerifyStatus::Violated;
    }
    j["reports"] = arr;
    write_file(out_dir(o), "report.json", dump_report(j));
    return violated ? 2 : 0;
}

int run_classify(const CommonOpts& o, const std::string& point,
                 int gas_angles, double gas_rho) {
    FieldDef field = load_field(o);
    Rect region = parse_region(o.region);

    ClassifyConfig cfg;
    cfg.gas_angles = gas_angles;
    cfg.gas.rho = gas_rho;

    std::vector<Vec2> points;
    ordered_json j = report_envelope(meta_for(o, "classify"), field);
    j["region"] = region_json(region);
    if (!point.empty()) {
        points.push_back(parse_point(point, "--point"));
        j["seeds_tried"] = 0;
        j["seeds_converged"] = 0;
    } else {
        CriticalPoints found = find_critical_points(field, region);
        points = found.points;
        j["seeds_tried"] = found.seeds_tried;
        j["seeds_converged"] = found.seeds_converged;
    }
    if (points.empty()) throw Error("no critical points found in the region");

    ordered_json pts = ordered_json::array();
    for (const Vec2& p : points) pts.push_back({p.x, p.y});
    j["critical_points"] = pts;

    bool not_certified = false;
    ordered_json cls = ordered_json::array();
    for (const Vec2& p : points) {
        Classification c = classify_critical_point(field, p, region, cfg);
        not_certified = not_certified || c.verdict == Verdict::HypothesesNotCertified;
        cls.push_back(classification_json(c));
    }
    j["classifications"] = cls;
    write_file(out_dir(o), "classification.json", dump_report(j));
    return not_certified ? 2 : 0;
}

int run_portrait(const CommonOpts& o, int orbits, double t_span) {
    FieldDef field = load_field(o);
    Rect region = parse_region(o.region);
    PortraitConfig cfg;
    cfg.orbit_seeds = orbits;
    cfg.t_span = t_span;
    PortraitResult r = render_portrait(field, region, cfg);
    write_file(out_dir(o), "portrait.svg", r.svg);
    write_file(out_dir(o), "orbits.csv", r.orbits_csv);
    return 0;
}

int run_poincare(const CommonOpts& o, const std::string& base,
                 const std::string& direction, const std::string& r_range,
                 int grid) {
    FieldDef field = load_field(o);
    Section section(parse_point(base, "--base"), parse_point(direction, "--direction"));
    std::vector<double> rr = split_doubles(r_range);
    if (rr.size() != 2 || !(rr[0] > 0.0) || !(rr[1] > rr[0]))
        throw Error("--r-range needs lo,hi with 0 < lo < hi");
    if (grid < 2) throw Error("--grid must be at least 2");

    std::vector<ReturnSample> samples;
    samples.reserve(grid);
    for (int i = 0; i < grid; ++i) {
        double r = i == grid - 1 ? rr[1] : rr[0] + (rr[1] - rr[0]) * i / (grid - 1);
        samples.push_back(return_map(field, section, r));
    }
    write_file(out_dir(o), "returnmap.csv", return_profile_csv(samples));
    return 0;
}

int run_liouville(const CommonOpts& o, const std::string& polygon) {
    FieldDef field = load_field(o);
    std::vector<double> nums = split_doubles(polygon);
    if (nums.size() < 6 || nums.size() % 2 != 0)
        throw Error("--polygon needs at least three x,y pairs");
    std::vector<Vec2> verts;
    for (std::size_t i = 0; i < nums.size(); i += 2)
        verts.push_back({nums[i], nums[i + 1]});
    Polygon poly(std::move(verts));
    LiouvilleResult r = liouville_residual(field, poly);

    ordered_json j = report_envelope(meta_for(o, "liouville"), field);
    j.update(liouville_json(poly, r));
    write_file(out_dir(o), "liouville.json", dump_report(j));
    return 0;
}

int run_hamiltonian(const CommonOpts& o, const std::string& base_str, int grid,
                    int samples, const std::string& orbit_start,
                    double orbit_time) {
    FieldDef field = load_field(o);
    Rect region = parse_region(o.region);
    Vec2 base = parse_point(base_str, "--base");
    if (grid < 2) throw Error("--grid must be at least 2");
    if (samples < 1) throw Error("--samples must be positive");
    if (!(orbit_time > 0.0) || !std::isfinite(orbit_time))
        throw Error("--orbit-time must be positive and finite");
    if (!region.contains(base)) throw Error("--base must lie inside the region");

    // With the inputs validated, the only remaining failure is the
    // flatness gate: a trace the reconstruction cannot certify as zero.
    ScalarGrid g;
    try {
        g = reconstruct_hamiltonian(field, base, region, grid);
    } catch (const Error& e) {
        std::cerr << "not certified: " << e.what() << "\n";
        return 2;
    }
    double residual = hamiltonian_residual(field, g, samples, o.seed);

    Vec2 x0 = orbit_start.empty()
                  ? Vec2{0.5 * (base.x + region.xmax), base.y}
                  : parse_point(orbit_start, "--orbit-start");
    ConservationReport cons = conservation_check(field, g, x0, orbit_time);

    ordered_json j = report_envelope(meta_for(o, "hamiltonian"), field);
    j["region"] = region_json(region);
    j["grid"] = grid_meta_json(g);
    j["residual"] = residual;
    j["residual_samples"] = samples;
    try {
        j["hessian"] = hessian_json(hessian_extremum(field, base));
    } catch (const Error&) {
        j["hessian"] = nullptr;  // base is not a critical point
    }
    j["conservation"] = conservation_json(cons, x0, orbit_time);
    write_file(out_dir(o), "hgrid.csv", grid_csv(g));
    write_file(out_dir(o), "hamiltonian.json", dump_report(j));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar vector field stability analyzer"};
    app.require_subcommand(1);

    CommonOpts vo, co, po, ro, lo, ho;
    std::string point, base = "0,0", direction = "1,0", r_range = "0.1,3";
    std::string orbit_start;
    int gas_angles = 16, orbits = 12, grid_n = 48, hgrid = 256, hsamples = 200;
    double gas_rho = 1e-2, t_span = 30.0, orbit_time = 20.0;

    CLI::App* verify = app.add_subcommand("verify", "certify the standing hypotheses");
    add_common(verify, vo, true);

    CLI::App* classify = app.add_subcommand("classify", "run the verdict pipeline");
    add_common(classify, co, true);
    classify->add_option("--point", point, "classify this critical point only (x,y)");
    classify->add_option("--gas-angles", gas_angles, "probe angles per radius");
    classify->add_option("--gas-rho", gas_rho, "convergence ball radius");

    CLI::App* portrait = app.add_subcommand("portrait", "render a static phase portrait");
    add_common(portrait, ro, true);
    portrait->add_option("--orbits", orbits, "number of orbit seeds");
    portrait->add_option("--t-span", t_span, "integration time per orbit");

    CLI::App* poincare = app.add_subcommand("poincare", "sample a return-map profile");
    add_common(poincare, po, false);
    poincare->add_option("--base", base, "section base point (x,y)");
    poincare->add_option("--direction", direction, "section direction (dx,dy)");
    poincare->add_option("--r-range", r_range, "sampled parameter range lo,hi");
    poincare->add_option("--grid", grid_n, "number of samples");

    CLI::App* liouville = app.add_subcommand("liouville", "area-derivative identity check");
    add_common(liouville, lo, false);
    std::string polygon;
    liouville->add_option("--polygon", polygon, "vertices x1,y1,x2,y2,...")->required();

    CLI::App* hamiltonian =
        app.add_subcommand("hamiltonian", "reconstruct and test a Hamiltonian");
    add_common(hamiltonian, ho, true);
    std::string hbase = "0,0";
    hamiltonian->add_option("--base", hbase, "anchor point with H = 0 (x,y)");
    hamiltonian->add_option("--grid", hgrid, "grid nodes per axis");
    hamiltonian->add_option("--samples", hsamples, "residual sample count");
    hamiltonian->add_option("--orbit-start", orbit_start,
                            "conservation orbit start (default: midway to the "
                            "region edge)");
    hamiltonian->add_option("--orbit-time", orbit_time, "conservation orbit time");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (verify->parsed()) return run_verify(vo);
        if (classify->parsed()) return run_classify(co, point, gas_angles, gas_rho);
        if (portrait->parsed()) return run_portrait(ro, orbits, t_span);
        if (poincare->parsed()) return run_poincare(po, base, direction, r_range, grid_n);
        if (liouville->parsed()) return run_liouville(lo, polygon);
        if (hamiltonian->parsed())
            return run_hamiltonian(ho, hbase, hgrid, hsamples, orbit_start, orbit_time);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
