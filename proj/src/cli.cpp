#include "gcat/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "gcat/errors.hpp"
#include "gcat/lift.hpp"
#include "gcat/mesh.hpp"
#include "gcat/verify.hpp"
#include "gcat/zoo.hpp"

namespace gcat::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr double kDefaultParam = 2.0;
constexpr double kCentralStep = 1e-4;
constexpr int kMaxGrid = 4096;

bool parse_int(std::string_view s, int& v) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && p == s.data() + s.size();
}

curvature::DiffSpec diff_spec(const RunConfig& cfg) {
    return cfg.mode == "central" ? curvature::DiffSpec::central(kCentralStep) : curvature::DiffSpec::dual();
}

zoo::FamilyId family_id(zoo::Kind k, const RunConfig& cfg) {
    return zoo::FamilyId(k, zoo::takes_mu(k) ? cfg.mu.value_or(kDefaultParam)
                                             : zoo::takes_nu(k) ? cfg.nu.value_or(kDefaultParam) : 0.0);
}

// Parameter problems surface as config errors naming mu or nu.
zoo::FamilyId checked_family(zoo::Kind k, const RunConfig& cfg) {
    try {
        return family_id(k, cfg);
    } catch (const DomainError& e) {
        throw ConfigError(zoo::takes_mu(k) ? "mu" : "nu", e.what());
    }
}

std::vector<zoo::Kind> selected_kinds(const RunConfig& cfg) {
    if (cfg.family == "all") return zoo::all_kinds();
    const auto k = zoo::kind_from_key(cfg.family);
    if (!k) throw ConfigError("family", "unknown family '" + cfg.family + "'");
    return {*k};
}

std::string fmt(double x) { return zoo::format_real(x); }

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    return f;
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    auto f = open_out(cfg.out);
    f << text;
    if (!f) throw Error("write to '" + cfg.out + "' failed");
}

std::vector<verify::VerificationReport> run_suites(const RunConfig& cfg) {
    verify::SuiteOptions opt;
    if (cfg.grid) {
        opt.grid_u = (*cfg.grid)[0];
        opt.grid_v = (*cfg.grid)[1];
    }
    opt.tol = cfg.tol;
    opt.how = diff_spec(cfg);
    std::vector<verify::VerificationReport> reports;
    for (zoo::Kind k : selected_kinds(cfg)) {
        const auto id = checked_family(k, cfg);
        const auto suites = verify::suites_for(k);
        if (!cfg.suite.empty()) {
            if (std::find(suites.begin(), suites.end(), cfg.suite) == suites.end()) {
                if (cfg.family == "all") continue;
                throw ConfigError("suite", "'" + cfg.suite + "' does not apply to " + id.label());
            }
            reports.push_back(verify::run_suite(id, cfg.suite, opt));
            continue;
        }
        for (const auto& s : suites) reports.push_back(verify::run_suite(id, s, opt));
    }
    return reports;
}

json lift_summary(const std::string& name) {
    const auto fx = lift::fixture(name);
    const auto s0 = lift::local_lift(fx.map, fx.curve, fx.t0, fx.seed);
    const auto tr = lift::continue_lift(fx.map, fx.curve, s0, fx.t0);
    json j;
    j["fixture"] = name;
    j["status"] = lift::to_string(tr.status);
    j["t_final"] = tr.last().t;
    j["sigma_final"] = std::vector<double>(tr.last().sigma.data(), tr.last().sigma.data() + tr.last().sigma.size());
    return j;
}

}  // namespace

std::array<int, 2> parse_grid(const std::string& s) {
    const auto x = s.find_first_of("xX");
    std::array<int, 2> g{};
    if (x == std::string::npos || !parse_int(std::string_view(s).substr(0, x), g[0]) ||
        !parse_int(std::string_view(s).substr(x + 1), g[1]))
        throw ConfigError("grid", "expected AxB, got '" + s + "'");
    for (int n : g)
        if (n < 2 || n > kMaxGrid)
            throw ConfigError("grid", "dimensions must lie in [2, " + std::to_string(kMaxGrid) + "], got '" + s + "'");
    return g;
}

std::array<int, 3> parse_proj(const std::string& s) {
    std::array<int, 3> p{};
    std::stringstream ss(s);
    std::string tok;
    int n = 0;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty() && (tok[0] == 'x' || tok[0] == 't')) tok = tok[0] == 't' ? "0" : tok.substr(1);
        if (n >= 3 || !parse_int(tok, p[n]) || p[n] < 0 || p[n] > 3)
            throw ConfigError("proj", "expected three coordinate indices such as 1,2,3, got '" + s + "'");
        ++n;
    }
    if (n != 3 || p[0] == p[1] || p[0] == p[2] || p[1] == p[2])
        throw ConfigError("proj", "expected three distinct coordinate indices, got '" + s + "'");
    return p;
}

void validate(const RunConfig& cfg, const std::string& command) {
    if (cfg.mode != "dual" && cfg.mode != "central")
        throw ConfigError("mode", "must be dual or central, got '" + cfg.mode + "'");
    if (cfg.tol && !(*cfg.tol > 0 && std::isfinite(*cfg.tol))) throw ConfigError("tol", "must be a positive number");
    if (cfg.mu && !std::isfinite(*cfg.mu)) throw ConfigError("mu", "must be finite");
    if (cfg.nu && !std::isfinite(*cfg.nu)) throw ConfigError("nu", "must be finite");
    if (!cfg.suite.empty()) {
        const auto all = verify::all_suite_names();
        if (std::find(all.begin(), all.end(), cfg.suite) == all.end())
            throw ConfigError("suite", "unknown suite '" + cfg.suite + "' (known: " + join(all, ", ") + ")");
    }
    if (command == "lift") {
        const auto names = lift::fixture_names();
        if (std::find(names.begin(), names.end(), cfg.fixture) == names.end())
            throw ConfigError("fixture", "unknown fixture '" + cfg.fixture + "' (known: " + join(names, ", ") + ")");
        return;
    }
    if (command == "list" && cfg.family.empty()) return;
    if (command == "report" && cfg.family.empty()) return;
    if (cfg.family.empty()) throw ConfigError("family", "a family key is required");
    if (cfg.family == "all" && command == "sample") throw ConfigError("family", "sample takes a single family");
    for (zoo::Kind k : selected_kinds(cfg)) {
        if (command == "list") continue;
        checked_family(k, cfg);
        if (command == "sample" && cfg.proj)
            for (int p : *cfg.proj)
                if (p >= ambient_dim(zoo::ambient(k)))
                    throw ConfigError("proj", "index " + std::to_string(p) + " out of range for " + std::string(zoo::key(k)));
    }
}

std::string canonical(const RunConfig& cfg, const std::string& command) {
    std::ostringstream s;
    s << "command=" << command << ";family=" << cfg.family;
    if (cfg.mu) s << ";mu=" << fmt(*cfg.mu);
    if (cfg.nu) s << ";nu=" << fmt(*cfg.nu);
    if (cfg.grid) s << ";grid=" << (*cfg.grid)[0] << 'x' << (*cfg.grid)[1];
    if (cfg.tol) s << ";tol=" << fmt(*cfg.tol);
    s << ";mode=" << cfg.mode;
    if (cfg.proj) s << ";proj=" << (*cfg.proj)[0] << ',' << (*cfg.proj)[1] << ',' << (*cfg.proj)[2];
    s << ";markers=" << cfg.markers << ";suite=" << cfg.suite << ";fixture=" << cfg.fixture;
    return s.str();
}

int cmd_list(const RunConfig& cfg, std::ostream& out) {
    std::vector<zoo::Kind> kinds = cfg.family.empty() ? zoo::all_kinds() : selected_kinds(cfg);
    if (cfg.json) {
        json arr = json::array();
        for (zoo::Kind k : kinds) {
            const auto sp = zoo::spec(family_id(k, cfg));
            json j;
            j["key"] = std::string(zoo::key(k));
            j["ambient"] = to_string(zoo::ambient(k));
            j["parameter"] = zoo::takes_mu(k) ? "mu" : zoo::takes_nu(k) ? "nu" : "";
            j["range"] = zoo::param_range(k);
            j["axis"] = sp.axis;
            j["singular_set"] = sp.singular_set;
            j["limit_set"] = sp.limit_set;
            j["suites"] = verify::suites_for(k);
            arr.push_back(j);
        }
        emit(arr.dump(2) + "\n", cfg, out);
        return kOk;
    }
    std::ostringstream s;
    s << std::left << std::setw(5) << "key" << std::setw(8) << "ambient" << std::setw(6) << "param" << std::setw(30)
      << "range" << "suites\n";
    for (zoo::Kind k : kinds) {
        s << std::setw(5) << zoo::key(k) << std::setw(8) << to_string(zoo::ambient(k)) << std::setw(6)
          << (zoo::takes_mu(k) ? "mu" : zoo::takes_nu(k) ? "nu" : "-") << std::setw(30) << zoo::param_range(k)
          << join(verify::suites_for(k), ",") << '\n';
    }
    emit(s.str(), cfg, out);
    return kOk;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
    const zoo::Kind k = selected_kinds(cfg).front();
    const auto id = checked_family(k, cfg);
    const auto sp = zoo::spec(id);
    Grid grid = sp.sampling;
    if (cfg.grid) grid = zoo::default_grid(k, (*cfg.grid)[0], (*cfg.grid)[1]);
    const auto m = mesh::sample_mesh(id, grid, cfg.tol.value_or(curvature::kLightlikeTol), diff_spec(cfg));
    mesh::check_de_sitter(m);

    const std::array<int, 3> proj = cfg.proj ? *cfg.proj : (m.dim == 4 ? std::array{1, 2, 3} : std::array{0, 1, 2});
    const std::string names4[] = {"x0", "x1", "x2", "x3"}, names3[] = {"t", "x", "y"};
    auto cname = [&](int i) { return m.dim == 4 ? names4[i] : names3[i]; };
    std::string dropped;
    for (int i = 0; i < m.dim; ++i)
        if (std::find(proj.begin(), proj.end(), i) == proj.end()) dropped += (dropped.empty() ? "" : ",") + cname(i);

    const std::string path = cfg.out.empty() ? id.key() + ".obj" : cfg.out;
    const std::string hash = mesh::hex64(mesh::fnv1a64(canonical(cfg, "sample")));
    const std::vector<std::string> header{
        "gcat sample " + id.label(),
        "ambient " + std::string(to_string(sp.surface.kind())),
        "grid " + std::to_string(grid.u.n) + "x" + std::to_string(grid.v.n) + " u in [" + fmt(grid.u.lo) + ", " +
            fmt(grid.u.hi) + (grid.u.half_open ? ")" : "]") + " v in [" + fmt(grid.v.lo) + ", " + fmt(grid.v.hi) +
            (grid.v.half_open ? ")" : "]"),
        "projection (" + cname(proj[0]) + ", " + cname(proj[1]) + ", " + cname(proj[2]) + ")" +
            (dropped.empty() ? "" : ", dropped " + dropped),
        "vertices row-major over the grid, u outer",
        "config-hash fnv1a64:" + hash,
    };
    {
        auto f = open_out(path);
        mesh::write_obj(f, m, proj, header);
        if (!f) throw Error("write to '" + path + "' failed");
    }
    std::size_t near = std::count(m.markers.begin(), m.markers.end(), mesh::Marker::NearSingular);
    out << "wrote " << path << ": " << m.vertices.size() << " vertices, " << m.faces.size() << " faces\n";
    if (cfg.markers) {
        const auto dot = path.rfind(".obj");
        const std::string mpath = (dot != std::string::npos && dot + 4 == path.size() ? path.substr(0, dot) : path) +
                                  ".markers.csv";
        auto f = open_out(mpath);
        mesh::write_markers_csv(f, m);
        if (!f) throw Error("write to '" + mpath + "' failed");
        out << "wrote " << mpath << ": " << near << " near_singular vertices\n";
    }
    return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const auto reports = run_suites(cfg);
    bool ok = true;
    json j;
    j["command"] = "verify";
    j["family"] = cfg.family;
    j["config_hash"] = mesh::hex64(mesh::fnv1a64(canonical(cfg, "verify")));
    json arr = json::array();
    for (const auto& r : reports) {
        ok = ok && r.passed();
        arr.push_back(verify::to_json(r));
    }
    j["passed"] = ok;
    j["reports"] = arr;
    emit(j.dump(2) + "\n", cfg, out);
    return ok ? kOk : kSuiteFailure;
}

int cmd_lift(const RunConfig& cfg, std::ostream& out) {
    const auto fx = lift::fixture(cfg.fixture);
    const auto s0 = lift::local_lift(fx.map, fx.curve, fx.t0, fx.seed);
    const auto tr = lift::continue_lift(fx.map, fx.curve, s0, fx.t0);
    const std::string text = lift::to_json(tr, fx.name).dump(2) + "\n";
    if (cfg.out.empty()) {
        out << text;
    } else {
        emit(text, cfg, out);
        out << fx.name << ": " << lift::to_string(tr.status) << " at t=" << fmt(tr.last().t) << "\n";
    }
    return kOk;
}

int cmd_report(const RunConfig& cfg0, std::ostream& out) {
    RunConfig cfg = cfg0;
    if (cfg.family.empty()) cfg.family = "all";
    const auto reports = run_suites(cfg);
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.passed();
    json lifts = json::array();
    for (const auto& n : lift::fixture_names()) lifts.push_back(lift_summary(n));
    if (cfg.json) {
        json j;
        j["command"] = "report";
        j["family"] = cfg.family;
        j["passed"] = ok;
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(verify::to_json(r, false));
        j["reports"] = arr;
        j["lift"] = lifts;
        emit(j.dump(2) + "\n", cfg, out);
        return ok ? kOk : kSuiteFailure;
    }
    std::ostringstream s;
    s << std::left << std::setw(14) << "family" << std::setw(15) << "suite" << std::setw(6) << "pass" << std::setw(13)
      << "max" << std::setw(10) << "tol" << "samples\n";
    for (const auto& r : reports) {
        std::ostringstream mx, tl;
        mx << std::scientific << std::setprecision(3) << r.max_residual;
        tl << std::scientific << std::setprecision(0) << r.tolerance;
        s << std::setw(14) << r.family << std::setw(15) << r.suite << std::setw(6) << (r.passed() ? "yes" : "NO")
          << std::setw(13) << mx.str() << std::setw(10) << tl.str() << r.samples << '\n';
    }
    s << '\n';
    for (const auto& l : lifts)
        s << "lift " << std::setw(17) << l["fixture"].get<std::string>() << l["status"].get<std::string>()
          << " at t=" << fmt(l["t_final"].get<double>()) << '\n';
    s << (ok ? "all suites passed\n" : "some suites FAILED\n");
    emit(s.str(), cfg, out);
    return ok ? kOk : kSuiteFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"gcat: Lorentzian catenoid zoo, verification suites and lift probes", "gcat"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file; command-line flags win");
    app.allow_config_extras(CLI::config_extras_mode::error);

    RunConfig cfg;
    std::string grid, proj;
    app.add_option("--mu", cfg.mu, "mu parameter (te, se); default 2");
    app.add_option("--nu", cfg.nu, "nu parameter (th, sh); default 2");
    app.add_option("--grid", grid, "sampling grid AxB");
    app.add_option("--tol", cfg.tol, "tolerance override");
    app.add_option("--mode", cfg.mode, "differentiation mode: dual or central");
    app.add_option("--out", cfg.out, "output path");
    app.add_flag("--json", cfg.json, "machine-readable output");
    app.add_option("--proj", proj, "coordinate triple for OBJ export, e.g. 1,2,3");
    app.add_flag("--markers", cfg.markers, "also write a per-vertex marker CSV");
    app.add_option("--suite", cfg.suite, "run only this suite");
    app.add_option("--family", cfg.family, "family key (same as the positional argument)");

    std::string positional;
    auto* list = app.add_subcommand("list", "families, parameter ranges and suites");
    list->add_option("family", positional, "family key");
    auto* sample = app.add_subcommand("sample", "sample a family to an OBJ mesh");
    sample->add_option("family", positional, "family key");
    auto* ver = app.add_subcommand("verify", "run verification suites; JSON output");
    ver->add_option("family", positional, "family key or all");
    auto* lft = app.add_subcommand("lift", "run a lift fixture; JSON trace");
    lft->add_option("fixture", cfg.fixture, "fixture name")->required();
    auto* rep = app.add_subcommand("report", "text summary of every suite and lift fixture");
    rep->add_option("family", positional, "family key or all (default all)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    std::string command;
    for (auto* sc : {list, sample, ver, lft, rep})
        if (sc->parsed()) command = sc->get_name();
    if (!positional.empty()) cfg.family = positional;

    try {
        if (!grid.empty()) cfg.grid = parse_grid(grid);
        if (!proj.empty()) cfg.proj = parse_proj(proj);
        validate(cfg, command);
        if (command == "list") return cmd_list(cfg, out);
        if (command == "sample") return cmd_sample(cfg, out);
        if (command == "verify") return cmd_verify(cfg, out);
        if (command == "lift") return cmd_lift(cfg, out);
        return cmd_report(cfg, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kSuiteFailure;
    }
}

}  // namespace gcat::cli
