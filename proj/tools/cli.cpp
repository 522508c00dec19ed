#include "cli.hpp"

#include "report_io.hpp"

#include "limcf/errors.hpp"
#include "limcf/families.hpp"
#include "limcf/flow_sim.hpp"
#include "limcf/ode_oracle.hpp"
#include "limcf/ruled.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace limcf::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string kind;
    std::string V;       // noncyl velocity
    std::string v;       // cyl-time (v1,v2)
    std::string v2, v3;  // spacelike-ruling cylinders
    std::string sigma = "1", delta = "1", branch = "1";
    std::string c;
    double free_component = 0;
    std::string s_axis, t_axis;
    std::string out, curve;
    double threshold = 1e-8;
    std::string test_V;
    std::string dts = "2e-3,1e-3,5e-4";
    double T = 0.1;
    std::string surface;
    double H_floor = 1e-6;
    std::string interval;
    double h = 1e-3;
    std::string vec;
    std::optional<double> tol;
};

Sign parse_sign(const std::string& text, const char* what) {
    if (text == "1" || text == "+1" || text == "+") return Sign::Positive;
    if (text == "-1" || text == "-") return Sign::Negative;
    throw InvalidParameter(std::string(what) + " must be +1 or -1, got '" + text + "'");
}

double parse_one(const std::string& text, const char* what) {
    if (text.empty()) throw UsageError(std::string("missing --") + what);
    const auto xs = parse_list(text);
    if (xs.size() != 1) throw InvalidParameter(std::string(what) + " takes one number");
    return xs[0];
}

LVec3 parse_vec3(const std::string& text, const char* what) {
    const auto xs = parse_list(text);
    if (xs.size() != 3) throw InvalidParameter(std::string(what) + " takes three comma-separated numbers");
    return {xs[0], xs[1], xs[2]};
}

std::vector<double> constants(const RunConfig& cfg, std::size_t n) {
    std::vector<double> c(n, 0.0);
    if (cfg.c.empty()) return c;
    const auto xs = parse_list(cfg.c);
    if (xs.size() != n) throw InvalidParameter("--c takes " + std::to_string(n) + " numbers for this family");
    return xs;
}

FamilySpec build_family(const RunConfig& cfg) {
    if (cfg.kind == "noncyl") {
        if (cfg.V.empty()) throw UsageError("noncyl needs --V v1,v2,v3");
        const auto c = constants(cfg, 3);
        return NonCylFamily(parse_vec3(cfg.V, "--V"), c[0], c[1], c[2]);
    }
    if (cfg.kind == "cyl-equal") {
        const auto c = constants(cfg, 2);
        return CylEqualFamily(parse_one(cfg.v2, "v2"), parse_sign(cfg.sigma, "--sigma"),
                              parse_sign(cfg.delta, "--delta"), c[0], c[1]);
    }
    if (cfg.kind == "cyl-general") {
        const auto c = constants(cfg, 2);
        return CylGeneralFamily(parse_one(cfg.v2, "v2"), parse_one(cfg.v3, "v3"),
                                parse_sign(cfg.delta, "--delta"), parse_sign(cfg.branch, "--branch"),
                                c[0], c[1]);
    }
    if (cfg.kind == "cyl-time") {
        if (cfg.v.empty()) throw UsageError("cyl-time needs --v v1,v2");
        const auto xs = parse_list(cfg.v);
        if (xs.size() != 2) throw InvalidParameter("--v takes two comma-separated numbers");
        const auto c = constants(cfg, 2);
        return CylTimelikeFamily(xs[0], xs[1], parse_sign(cfg.branch, "--branch"), c[0], c[1]);
    }
    if (cfg.kind.empty()) throw UsageError("missing family kind");
    throw UsageError("unknown family '" + cfg.kind + "' (noncyl, cyl-equal, cyl-general, cyl-time)");
}

enum class Purpose { Mesh, Flow };

// Default parameter window for a family when --s/--t are not given. Flow
// windows keep h_s near the explicit stability limit at dt = 2e-3 and use a
// coarse t-axis: the solutions are affine in t, and on timelike patches the
// flow is anti-diffusive along t, so fine t-spacing only feeds roundoff growth.
std::pair<GridAxis, GridAxis> default_axes(const FamilySpec& fam, Purpose purpose) {
    const bool mesh = purpose == Purpose::Mesh;
    const int n = mesh ? 32 : 11;
    const GridAxis t_short = mesh ? GridAxis{-1.0, 1.0, 32} : GridAxis{-2.0, 2.0, 7};
    if (std::holds_alternative<NonCylFamily>(fam))
        return {{1.0, 2.0, n}, {0.2, 0.8, mesh ? 32 : 7}};
    if (std::holds_alternative<CylEqualFamily>(fam)) return {{0.5, 2.0, n}, t_short};
    if (const auto* g = std::get_if<CylGeneralFamily>(&fam)) {
        const double k = g->k();
        const double lo = k > 0 ? -1.0 : std::sqrt(-k) + 0.5;
        return {{lo, lo + 2.0, n}, t_short};
    }
    const double R = std::get<CylTimelikeFamily>(fam).radius();
    if (mesh) return {{-0.9 * R, 0.9 * R, n}, t_short};
    const double w = std::min(0.5 * R, 2.5);
    return {{-w, w, n}, {-10.0, 10.0, 7}};
}

std::pair<GridAxis, GridAxis> resolve_axes(const RunConfig& cfg, const FamilySpec& fam, Purpose purpose) {
    auto [s, t] = default_axes(fam, purpose);
    if (!cfg.s_axis.empty()) s = shrink_to_domain(parse_axis(cfg.s_axis), family_domain(fam));
    if (!cfg.t_axis.empty()) t = parse_axis(cfg.t_axis);
    return {s, t};
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    return f;
}

int cmd_family(const RunConfig& cfg, std::ostream& out) {
    const FamilySpec fam = build_family(cfg);
    if (cfg.out.empty()) throw UsageError("family needs --out mesh.obj");
    const auto [sa, ta] = resolve_axes(cfg, fam, Purpose::Mesh);
    const ParamSurface surf = family_surface(fam);
    const MeshPatch patch = sample_patch(surf, sa, ta);

    std::string curve = cfg.curve;
    if (curve.empty()) {
        std::filesystem::path p(cfg.out);
        curve = (p.parent_path() / (p.stem().string() + "_curve.csv")).string();
    }
    {
        auto f = open_out(cfg.out);
        write_obj(f, patch);
    }
    {
        auto f = open_out(curve);
        f << "s,x,y,z\n";
        for (double s : patch.s) {
            const LVec3 g = curve_eval(fam, s).p;
            f << format_real(s) << ',' << format_real(g.x1) << ',' << format_real(g.x2) << ','
              << format_real(g.x3) << '\n';
        }
    }
    out << "vertices " << patch.vertices.size() << '\n'
        << "quads " << (patch.ns - 1) * (patch.nt - 1) << '\n'
        << "mesh " << cfg.out << '\n'
        << "curve " << curve << '\n';
    return kOk;
}

ResidualReport residual_sweep(const ParamSurface& surf, const MeshPatch& patch, const LVec3& V) {
    ResidualReport rep;
    double sum = 0;
    for (int i = 0; i < patch.ns; ++i) {
        for (int j = 0; j < patch.nt; ++j) {
            const SurfaceJet2 jet = surf.eval(patch.s[i], patch.t[j]);
            const FundamentalData d = fundamental_data(jet);
            const PrincResidual r = soliton_residual_princ(jet, V);
            rep.rows.push_back({patch.s[i], patch.t[j], jet.X, d.E, d.F, d.G, d.H, r.raw, r.normalized});
            rep.max_abs_norm = std::max(rep.max_abs_norm, std::abs(r.normalized));
            sum += std::abs(r.normalized);
        }
    }
    rep.count = rep.rows.size();
    rep.mean_abs_norm = rep.count ? sum / static_cast<double>(rep.count) : 0;
    return rep;
}

int cmd_residual(const RunConfig& cfg, std::ostream& out) {
    const FamilySpec fam = build_family(cfg);
    const auto [sa, ta] = resolve_axes(cfg, fam, Purpose::Mesh);
    const ParamSurface surf = family_surface(fam);
    const MeshPatch patch = sample_patch(surf, sa, ta);
    const LVec3 V = cfg.test_V.empty() ? family_velocity(fam, cfg.free_component)
                                       : parse_vec3(cfg.test_V, "--test-V");
    // the velocity is only fixed up to sign
    ResidualReport plus = residual_sweep(surf, patch, V);
    ResidualReport minus = residual_sweep(surf, patch, -V);
    const bool use_plus = plus.max_abs_norm <= minus.max_abs_norm;
    const ResidualReport& rep = use_plus ? plus : minus;
    if (!cfg.out.empty()) {
        auto f = open_out(cfg.out);
        write_residual_csv(f, rep);
    }
    out << "max_residual_norm " << format_real(rep.max_abs_norm) << '\n'
        << "mean_residual_norm " << format_real(rep.mean_abs_norm) << '\n'
        << "count " << rep.count << '\n'
        << "velocity_sign " << (use_plus ? "+" : "-") << '\n';
    return rep.max_abs_norm <= cfg.threshold ? kOk : kThreshold;
}

int cmd_flow(const RunConfig& cfg, std::ostream& out) {
    const auto dts = parse_list(cfg.dts);
    if (dts.size() < 2) throw UsageError("flow needs at least two --dt values");

    ParamSurface surf;
    GridAxis sa, ta;
    LVec3 V;
    if (!cfg.surface.empty()) {
        if (cfg.surface == "plane") surf = make_plane();
        else if (cfg.surface == "timelike-cylinder") surf = make_timelike_cylinder();
        else throw UsageError("unknown --surface '" + cfg.surface + "' (plane, timelike-cylinder)");
        sa = cfg.s_axis.empty() ? GridAxis{-1, 1, 11} : parse_axis(cfg.s_axis);
        ta = cfg.t_axis.empty() ? GridAxis{-2, 2, 7} : parse_axis(cfg.t_axis);
        V = cfg.test_V.empty() ? LVec3{1, 0, 0} : parse_vec3(cfg.test_V, "--test-V");
    } else {
        const FamilySpec fam = build_family(cfg);
        std::tie(sa, ta) = resolve_axes(cfg, fam, Purpose::Flow);
        surf = family_surface(fam);
        V = cfg.test_V.empty() ? family_velocity(fam, cfg.free_component)
                               : parse_vec3(cfg.test_V, "--test-V");
    }
    // velocity of the rigid motion the flow should reproduce
    const SurfaceJet2 centre = surf.eval(sa.value(sa.n / 2), ta.value(ta.n / 2));
    const LVec3 W = soliton_flow_velocity(centre, V);
    const auto rows = convergence_study(surf, sa, ta, W, cfg.T, dts, cfg.H_floor);

    out << "dt,deviation,ratio\n";
    bool ok = true;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        out << format_real(rows[k].dt) << ',' << format_real(rows[k].deviation) << ','
            << (k == 0 ? std::string("") : format_real(rows[k].ratio)) << '\n';
        if (k > 0) ok = ok && rows[k].ratio >= 1.7 && rows[k].ratio <= 2.3;
    }
    out << "flow_velocity " << format_real(W.x1) << ',' << format_real(W.x2) << ','
        << format_real(W.x3) << '\n';
    return ok ? kOk : kThreshold;
}

std::pair<double, double> parse_interval(const std::string& text) {
    const auto p = text.find(':');
    if (p == std::string::npos) throw InvalidParameter("--interval must look like s0:s1");
    const auto a = parse_list(text.substr(0, p)), b = parse_list(text.substr(p + 1));
    if (a.size() != 1 || b.size() != 1) throw InvalidParameter("--interval must look like s0:s1");
    return {a[0], b[0]};
}

int cmd_ode_check(const RunConfig& cfg, std::ostream& out) {
    const FamilySpec fam = build_family(cfg);
    double s0 = 1, s1 = 2;
    if (std::holds_alternative<CylGeneralFamily>(fam) || std::holds_alternative<CylTimelikeFamily>(fam))
        s0 = 0, s1 = 1;
    if (!cfg.interval.empty()) std::tie(s0, s1) = parse_interval(cfg.interval);

    double worst = 0;
    if (const auto* f = std::get_if<NonCylFamily>(&fam)) {
        noncyl_u_oracle(f->V(), s0, s1, cfg.h, [&](double s, std::span<const double> y) {
            const LVec3 g1 = noncyl_eval(*f, s).d1;
            worst = std::max(worst, std::abs(y[0] - (g1.x2 - g1.x3)));
        });
    } else {
        auto track = [&](double s, std::span<const double> y) {
            const PlanarState c = planar_derivative(fam, s);
            worst = std::max({worst, std::abs(y[0] - c.dx), std::abs(y[1] - c.dy)});
        };
        if (const auto* e = std::get_if<CylEqualFamily>(&fam)) cyl_spacelike_oracle(*e, s0, s1, cfg.h, track);
        else if (const auto* g = std::get_if<CylGeneralFamily>(&fam)) cyl_spacelike_oracle(*g, s0, s1, cfg.h, track);
        else cyl_timelike_oracle(std::get<CylTimelikeFamily>(fam), s0, s1, cfg.h, track);
    }
    const double quad = quadrature_position_check(fam, s0, s1, 1e-4);
    out << "max_discrepancy " << format_real(worst) << '\n'
        << "position_quadrature " << format_real(quad) << '\n';
    return std::max(worst, quad) <= 1e-6 ? kOk : kThreshold;
}

int cmd_poly_coeffs(const RunConfig& cfg, std::ostream& out) {
    const FamilySpec fam = build_family(cfg);
    GridAxis sa = default_axes(fam, Purpose::Mesh).first;
    sa.n = 16;
    if (!cfg.s_axis.empty()) sa = shrink_to_domain(parse_axis(cfg.s_axis), family_domain(fam));
    const ParamDomain dom = family_domain(fam);
    if (!dom.contains_rect(sa.lo, sa.hi, 0, 0)) throw DomainError("poly-coeffs: s-range leaves the domain");
    const RuledSpec spec = to_ruled(fam);
    const LVec3 V = cfg.test_V.empty() ? family_velocity(fam, cfg.free_component)
                                       : parse_vec3(cfg.test_V, "--test-V");
    std::ostringstream body;
    body << "s,A0,A1,A2,A3,A4,scale\n";
    for (int i = 0; i < sa.n; ++i) {
        const double s = sa.value(i);
        const PolyCoeffs c = noncyl_poly_coeffs(spec, V, ruling_delta(fam), s);
        body << format_real(s);
        for (double a : c.A) body << ',' << format_real(a);
        body << ',' << format_real(c.scale) << '\n';
    }
    if (cfg.out.empty()) {
        out << body.str();
    } else {
        auto f = open_out(cfg.out);
        f << body.str();
    }
    return kOk;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.vec.empty()) {
        const LVec3 v = parse_vec3(cfg.vec, "--vec");
        const double tol = cfg.tol.value_or(default_causal_tolerance(v));
        if (tol < 0) throw InvalidParameter("--tol must be >= 0");
        out << to_string(causal_class(v, tol)) << '\n';
        return kOk;
    }
    const FamilySpec fam = build_family(cfg);
    const auto [sa, ta] = resolve_axes(cfg, fam, Purpose::Mesh);
    const double s = sa.value(sa.n / 2), t = ta.value(ta.n / 2);
    const RuledSpec spec = to_ruled(fam);
    const SurfaceJet2 jet = ruled_jet(spec, s, t);
    const LVec3 V = family_velocity(fam, cfg.free_component);
    out << "family " << family_name(fam) << '\n'
        << "ruling " << to_string(causal_class(spec.beta(s).p)) << '\n'
        << "surface_at " << format_real(s) << ',' << format_real(t) << ' '
        << (nondegeneracy(jet) > 0 ? "timelike" : "spacelike") << '\n'
        << "conical " << (conical_check(fam, 64) ? "no" : "yes") << '\n'
        << "velocity " << format_real(V.x1) << ',' << format_real(V.x2) << ',' << format_real(V.x3)
        << '\n';
    return kOk;
}

void add_family_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("kind,--kind", cfg.kind, "noncyl | cyl-equal | cyl-general | cyl-time");
    sub->add_option("--V", cfg.V, "velocity v1,v2,v3 (noncyl)");
    sub->add_option("--v", cfg.v, "v1,v2 (cyl-time)");
    sub->add_option("--v2", cfg.v2, "v2 (cyl-equal, cyl-general)");
    sub->add_option("--v3", cfg.v3, "v3 (cyl-general)");
    sub->add_option("--sigma", cfg.sigma, "v3 = sigma v2 (cyl-equal)");
    sub->add_option("--delta", cfg.delta, "<gamma',gamma'> = delta (cyl-equal, cyl-general)");
    sub->add_option("--branch", cfg.branch, "square-root branch (cyl-general, cyl-time)");
    sub->add_option("--c", cfg.c, "integration constants, comma-separated");
    sub->add_option("--free", cfg.free_component, "velocity component left free by the family");
    sub->add_option("--s", cfg.s_axis, "s grid lo:hi:n");
    sub->add_option("--t", cfg.t_axis, "t grid lo:hi:n");
}

} // namespace

std::vector<std::string> merge_config(std::vector<std::string> args) {
    auto it = std::find(args.begin(), args.end(), "--config");
    std::string path;
    if (it != args.end()) {
        if (std::next(it) == args.end()) throw UsageError("--config needs a path");
        path = *std::next(it);
        args.erase(it, it + 2);
    } else {
        it = std::find_if(args.begin(), args.end(),
                          [](const std::string& a) { return a.rfind("--config=", 0) == 0; });
        if (it == args.end()) return args;
        path = it->substr(9);
        args.erase(it);
    }
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config " + path);
    auto present = [&args](const std::string& key) {
        const std::string flag = "--" + key;
        return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    };
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string line;
    while (std::getline(f, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (!present(key)) {
            // "--key=value" keeps values such as "-1" or "-1:1:8" from looking like flags
            args.push_back("--" + key + "=" + val);
        }
    }
    return args;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Ruled translating solitons of the inverse mean curvature flow in L^3"};
    app.require_subcommand(1);

    auto* classify = app.add_subcommand("classify", "causal class of a vector, or a family summary");
    add_family_options(classify, cfg);
    classify->add_option("--vec", cfg.vec, "vector x1,x2,x3");
    classify->add_option("--tol", cfg.tol, "causal tolerance");

    auto* family = app.add_subcommand("family", "write an OBJ patch and the base curve CSV");
    add_family_options(family, cfg);
    family->add_option("--out", cfg.out, "OBJ path");
    family->add_option("--curve", cfg.curve, "curve CSV path (default <out>_curve.csv)");

    auto* residual = app.add_subcommand("residual", "translator residual over a grid");
    add_family_options(residual, cfg);
    residual->add_option("--out", cfg.out, "CSV report path");
    residual->add_option("--threshold", cfg.threshold, "max normalized residual for exit 0");
    residual->add_option("--test-V", cfg.test_V, "test against this velocity instead");

    auto* flow = app.add_subcommand("flow", "flow convergence study");
    add_family_options(flow, cfg);
    flow->add_option("--dt", cfg.dts, "comma-separated time steps");
    flow->add_option("--T", cfg.T, "total flow time");
    flow->add_option("--surface", cfg.surface, "plane | timelike-cylinder instead of a family");
    flow->add_option("--H-floor", cfg.H_floor, "smallest admissible |H|");
    flow->add_option("--test-V", cfg.test_V, "velocity to test instead of the family's");

    auto* ode = app.add_subcommand("ode-check", "integrate the reduced ODE and compare");
    add_family_options(ode, cfg);
    ode->add_option("--interval", cfg.interval, "s0:s1");
    ode->add_option("--step", cfg.h, "RK4 step");

    auto* poly = app.add_subcommand("poly-coeffs", "coefficients A0..A4 along the base curve");
    add_family_options(poly, cfg);
    poly->add_option("--out", cfg.out, "CSV path (default stdout)");
    poly->add_option("--test-V", cfg.test_V, "evaluate with this velocity instead");

    try {
        args = merge_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
        if (classify->parsed()) return cmd_classify(cfg, out);
        if (family->parsed()) return cmd_family(cfg, out);
        if (residual->parsed()) return cmd_residual(cfg, out);
        if (flow->parsed()) return cmd_flow(cfg, out);
        if (ode->parsed()) return cmd_ode_check(cfg, out);
        return cmd_poly_coeffs(cfg, out);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidParameter& e) {
        err << "invalid parameter: " << e.what() << '\n';
        return kInvalidParameter;
    } catch (const AssumptionViolated& e) {
        err << "invalid parameter: " << e.what() << '\n';
        return kInvalidParameter;
    } catch (const DomainError& e) {
        err << "domain: " << e.what() << '\n';
        return kDomain;
    } catch (const DegenerateSurface& e) {
        err << "domain: " << e.what() << '\n';
        return kDomain;
    } catch (const MeanCurvatureZero& e) {
        err << "mean curvature zero: " << e.what() << '\n';
        return kCurvatureZero;
    } catch (const SingularRHS& e) {
        err << "singular ODE: " << e.what() << '\n';
        return kOdeSingular;
    }
}

} // namespace limcf::cli
