#include "circpot/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "circpot/disk_solvers.hpp"
#include "circpot/greens_annulus.hpp"
#include "circpot/kernels.hpp"
#include "circpot/regularity_metrics.hpp"
#include "circpot/rng.hpp"

namespace circpot::harness {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail(where + ": unknown key '" + it.key() + "'");
    }
}

const json& member(const json& j, const char* key) { return j.at(key); }

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where + " must be a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& where) {
    const double v = as_number(j, where);
    if (std::abs(v - std::round(v)) > 1e-9) fail(where + " must be an integer");
    return static_cast<int>(std::llround(v));
}

std::uint64_t as_seed(const json& j, const std::string& where) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) fail(where + " must be an integer");
    return j.get<std::uint64_t>();
}

std::vector<double> as_number_list(const json& j, const std::string& where) {
    std::vector<double> out;
    if (j.is_number()) {
        out.push_back(j.get<double>());
        return out;
    }
    if (!j.is_array()) fail(where + " must be a number or an array of numbers");
    for (const auto& e : j) out.push_back(as_number(e, where + " entry"));
    return out;
}

std::vector<int> as_int_list(const json& j, const std::string& where) {
    std::vector<int> out;
    for (double v : as_number_list(j, where)) {
        if (std::abs(v - std::round(v)) > 1e-9) fail(where + " entries must be integers");
        out.push_back(static_cast<int>(std::llround(v)));
    }
    return out;
}

DatumSpec parse_datum(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where + " must be an object with 'cos'/'sin' arrays");
    check_keys(j, where, {"cos", "sin"});
    DatumSpec s;
    if (j.contains("cos")) s.cos_coeffs = as_number_list(member(j, "cos"), where + ".cos");
    if (j.contains("sin")) s.sin_coeffs = as_number_list(member(j, "sin"), where + ".sin");
    if (s.cos_coeffs.empty() && s.sin_coeffs.empty()) fail(where + " has no coefficients");
    return s;
}

int datum_degree(const DatumSpec& s) {
    int deg = s.cos_coeffs.empty() ? 0 : static_cast<int>(s.cos_coeffs.size()) - 1;
    deg = std::max(deg, static_cast<int>(s.sin_coeffs.size()));
    return deg;
}

void require_samples(int samples, int degree, const std::string& where) {
    if (samples < 4 || samples % 2 != 0) fail(where + ": sample count must be even and >= 4");
    if (samples < 2 * degree + 2)
        fail(where + ": sample count " + std::to_string(samples) +
             " cannot resolve degree " + std::to_string(degree));
}

void parse_solver(const json& j, SolverConfig& s) {
    check_keys(j, "solver", {"M", "nodes_per_circle", "residual_tol"});
    if (j.contains("M")) s.M = as_int(member(j, "M"), "solver.M");
    if (j.contains("nodes_per_circle"))
        s.nodes_per_circle = as_int(member(j, "nodes_per_circle"), "solver.nodes_per_circle");
    if (j.contains("residual_tol"))
        s.residual_tol = as_number(member(j, "residual_tol"), "solver.residual_tol");
    if (s.M < 1) fail("solver.M must be >= 1");
    if (s.nodes_per_circle < 4 * s.M + 4)
        fail("solver.nodes_per_circle must be >= 4 M + 4");
    if (s.residual_tol <= 0) fail("solver.residual_tol must be positive");
}

void parse_metrics(const json& j, MetricsConfig& m) {
    check_keys(j, "metrics",
               {"collar_radial", "collar_angular", "interior_step_divisor",
                "poincare_step_divisor"});
    if (j.contains("collar_radial"))
        m.collar_radial = as_int(member(j, "collar_radial"), "metrics.collar_radial");
    if (j.contains("collar_angular"))
        m.collar_angular = as_int(member(j, "collar_angular"), "metrics.collar_angular");
    if (j.contains("interior_step_divisor"))
        m.interior_step_divisor =
            as_number(member(j, "interior_step_divisor"), "metrics.interior_step_divisor");
    if (j.contains("poincare_step_divisor"))
        m.poincare_step_divisor =
            as_number(member(j, "poincare_step_divisor"), "metrics.poincare_step_divisor");
    if (m.collar_radial < 4 || m.collar_angular < 8)
        fail("metrics collar resolution too coarse");
    if (m.interior_step_divisor < 1) fail("metrics.interior_step_divisor must be >= 1");
    if (m.poincare_step_divisor < 4)
        fail("metrics.poincare_step_divisor must be >= 4 so the gap scale is resolved");
}

GeometryFamily parse_family(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where + " must be an object");
    check_keys(j, where, {"n", "r0", "d_over_r0", "hole_radius_over_d"});
    GeometryFamily f;
    if (j.contains("n")) f.n = as_int_list(member(j, "n"), where + ".n");
    if (j.contains("r0")) f.r0 = as_number_list(member(j, "r0"), where + ".r0");
    if (j.contains("d_over_r0"))
        f.d_over_r0 = as_number_list(member(j, "d_over_r0"), where + ".d_over_r0");
    if (j.contains("hole_radius_over_d"))
        f.hole_radius_over_d =
            as_number(member(j, "hole_radius_over_d"), where + ".hole_radius_over_d");
    if (f.n.empty() || f.r0.empty() || f.d_over_r0.empty()) fail(where + " has an empty axis");
    for (int n : f.n)
        if (n < 0) fail(where + ".n entries must be >= 0");
    for (double r : f.r0)
        if (r <= 0) fail(where + ".r0 entries must be positive");
    if (f.hole_radius_over_d < 1)
        fail(where + ".hole_radius_over_d must be >= 1 so holes dominate the gap scale");
    for (double dr : f.d_over_r0) {
        if (dr <= 0) fail(where + ".d_over_r0 entries must be positive");
        if (dr * (1 + f.hole_radius_over_d) >= 1)
            fail(where + ": d_over_r0 too large for the hole ring to fit");
    }
    return f;
}

void parse_relation(const json& j, RelationConfig& r) {
    check_keys(j, "relation",
               {"data", "num_points", "r_range", "fd_step", "tol", "rotation_tol", "samples"});
    if (j.contains("data")) {
        const json& arr = member(j, "data");
        if (!arr.is_array()) fail("relation.data must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i)
            r.data.push_back(parse_datum(arr[i], "relation.data[" + std::to_string(i) + "]"));
    }
    if (j.contains("num_points")) r.num_points = as_int(member(j, "num_points"), "relation.num_points");
    if (j.contains("r_range")) {
        auto v = as_number_list(member(j, "r_range"), "relation.r_range");
        if (v.size() != 2) fail("relation.r_range must be [lo, hi]");
        r.r_min = v[0];
        r.r_max = v[1];
    }
    if (j.contains("fd_step")) r.fd_step = as_number(member(j, "fd_step"), "relation.fd_step");
    if (j.contains("tol")) r.tol = as_number(member(j, "tol"), "relation.tol");
    if (j.contains("rotation_tol"))
        r.rotation_tol = as_number(member(j, "rotation_tol"), "relation.rotation_tol");
    if (j.contains("samples")) r.samples = as_int(member(j, "samples"), "relation.samples");
    if (r.num_points < 1) fail("relation.num_points must be >= 1");
    if (!(0 < r.r_min && r.r_min < r.r_max && r.r_max < 1))
        fail("relation.r_range must satisfy 0 < lo < hi < 1");
    if (r.fd_step <= 0 || r.tol <= 0 || r.rotation_tol <= 0)
        fail("relation tolerances and fd_step must be positive");
    int deg = 8;
    for (const DatumSpec& s : r.data) deg = std::max(deg, datum_degree(s));
    require_samples(r.samples, deg, "relation.samples");
}

void parse_identities(const json& j, IdentityConfig& c) {
    check_keys(j, "identities",
               {"R_values", "num_x", "boundary_nodes", "pairs", "fd_h_rel", "collar_over_R",
                "trace_fields", "trace_annuli", "tol_scale"});
    if (j.contains("R_values")) c.R_values = as_number_list(member(j, "R_values"), "identities.R_values");
    if (j.contains("num_x")) c.num_x = as_int(member(j, "num_x"), "identities.num_x");
    if (j.contains("boundary_nodes"))
        c.boundary_nodes = as_int(member(j, "boundary_nodes"), "identities.boundary_nodes");
    if (j.contains("pairs")) c.pairs = as_int(member(j, "pairs"), "identities.pairs");
    if (j.contains("fd_h_rel")) c.fd_h_rel = as_number(member(j, "fd_h_rel"), "identities.fd_h_rel");
    if (j.contains("collar_over_R"))
        c.collar_over_R = as_number(member(j, "collar_over_R"), "identities.collar_over_R");
    if (j.contains("trace_fields"))
        c.trace_fields = as_int(member(j, "trace_fields"), "identities.trace_fields");
    if (j.contains("trace_annuli")) {
        c.trace_annuli.clear();
        const json& arr = member(j, "trace_annuli");
        if (!arr.is_array()) fail("identities.trace_annuli must be an array of pairs");
        for (const auto& e : arr) {
            auto v = as_number_list(e, "identities.trace_annuli entry");
            if (v.size() != 2) fail("identities.trace_annuli entries must be [rho1, rho2]");
            c.trace_annuli.push_back({v[0], v[1]});
        }
    }
    if (j.contains("tol_scale")) c.tol_scale = as_number(member(j, "tol_scale"), "identities.tol_scale");
    if (c.R_values.empty()) fail("identities.R_values must be nonempty");
    for (double R : c.R_values)
        if (R <= 0) fail("identities.R_values entries must be positive");
    if (c.num_x < 1 || c.pairs < 1 || c.trace_fields < 1)
        fail("identities sample counts must be >= 1");
    if (c.boundary_nodes < 8) fail("identities.boundary_nodes must be >= 8");
    if (c.fd_h_rel <= 0 || c.fd_h_rel > 0.05)
        fail("identities.fd_h_rel must lie in (0, 0.05]");
    if (c.collar_over_R <= 0 || c.collar_over_R >= 2)
        fail("identities.collar_over_R must lie in (0, 2)");
    if (c.trace_annuli.empty()) fail("identities.trace_annuli must be nonempty");
    for (const auto& ab : c.trace_annuli)
        if (!(0 < ab[0] && ab[0] < ab[1]))
            fail("trace annulus radii must satisfy 0 < rho1 < rho2");
    if (c.tol_scale <= 0) fail("identities.tol_scale must be positive");
}

void parse_solve(const json& j, SolveConfig& s) {
    check_keys(j, "solve", {"n", "r0", "d_over_r0", "num_probes"});
    if (j.contains("n")) s.n = as_int(member(j, "n"), "solve.n");
    if (j.contains("r0")) s.r0 = as_number(member(j, "r0"), "solve.r0");
    if (j.contains("d_over_r0")) s.d_over_r0 = as_number(member(j, "d_over_r0"), "solve.d_over_r0");
    if (j.contains("num_probes")) s.num_probes = as_int(member(j, "num_probes"), "solve.num_probes");
    if (s.n < 0) fail("solve.n must be >= 0");
    if (s.r0 <= 0) fail("solve.r0 must be positive");
    if (!(0 < s.d_over_r0 && s.d_over_r0 < 0.5)) fail("solve.d_over_r0 must lie in (0, 0.5)");
    if (s.num_probes < 1) fail("solve.num_probes must be >= 1");
}

Vec2 random_annulus_point(Rng& rng, double r_lo, double r_hi) {
    const double r = rng.uniform(r_lo, r_hi);
    const double t = rng.uniform(-kPi, kPi);
    return {r * std::cos(t), r * std::sin(t)};
}

std::string short_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Config parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("top level must be an object");
    check_keys(j, "top level",
               {"seed", "alpha", "solver", "metrics", "geometry_families", "data", "relation",
                "identities", "solve"});

    Config cfg;
    if (j.contains("seed")) cfg.seed = as_seed(member(j, "seed"), "seed");
    if (j.contains("alpha")) cfg.alpha = as_number(member(j, "alpha"), "alpha");
    if (!(0 < cfg.alpha && cfg.alpha <= 1)) fail("alpha must lie in (0, 1]");
    if (j.contains("solver")) parse_solver(member(j, "solver"), cfg.solver);
    if (j.contains("metrics")) parse_metrics(member(j, "metrics"), cfg.metrics);
    if (j.contains("geometry_families")) {
        cfg.families.clear();
        const json& arr = member(j, "geometry_families");
        if (!arr.is_array()) fail("geometry_families must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i)
            cfg.families.push_back(
                parse_family(arr[i], "geometry_families[" + std::to_string(i) + "]"));
    }
    if (j.contains("data")) {
        const json& d = member(j, "data");
        check_keys(d, "data", {"outer", "hole", "samples"});
        if (d.contains("outer")) cfg.outer_datum = parse_datum(member(d, "outer"), "data.outer");
        if (d.contains("hole")) cfg.hole_datum = parse_datum(member(d, "hole"), "data.hole");
        if (d.contains("samples")) cfg.datum_samples = as_int(member(d, "samples"), "data.samples");
    }
    require_samples(cfg.datum_samples,
                    std::max(datum_degree(cfg.outer_datum), datum_degree(cfg.hole_datum)),
                    "data.samples");
    if (j.contains("relation")) parse_relation(member(j, "relation"), cfg.relation);
    if (j.contains("identities")) parse_identities(member(j, "identities"), cfg.identities);
    if (j.contains("solve")) parse_solve(member(j, "solve"), cfg.solve);
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void Report::add(std::string name, double value, double threshold) {
    const bool ok = std::isfinite(value) && value <= threshold;
    lines.push_back({std::move(name), value, threshold, false, ok});
    pass = pass && ok;
}

void Report::add_min(std::string name, double value, double threshold) {
    const bool ok = std::isfinite(value) && value >= threshold;
    lines.push_back({std::move(name), value, threshold, true, ok});
    pass = pass && ok;
}

std::string Report::text() const {
    std::ostringstream out;
    int ok = 0;
    for (const CheckLine& c : lines) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "[%s] %-52s %12s %s %s\n", c.pass ? " OK " : "FAIL",
                      c.name.c_str(), short_number(c.value).c_str(), c.lower_bound ? ">=" : "<=",
                      short_number(c.threshold).c_str());
        out << buf;
        ok += c.pass ? 1 : 0;
    }
    out << "checks passed: " << ok << "/" << lines.size() << "\n";
    return out.str();
}

Report run_verify_relation(const Config& cfg) {
    const RelationConfig& rc = cfg.relation;
    Rng rng(cfg.seed);

    std::vector<PeriodicFunction> data;
    if (rc.data.empty()) {
        for (int k = 0; k < 5; ++k) {
            std::vector<double> cc(9), ss(8);
            for (double& v : cc) v = rng.uniform(-1.0, 1.0);
            for (double& v : ss) v = rng.uniform(-1.0, 1.0);
            data.push_back(PeriodicFunction::from_trig_poly(cc, ss, rc.samples));
        }
    } else {
        for (const DatumSpec& s : rc.data)
            data.push_back(PeriodicFunction::from_trig_poly(s.cos_coeffs, s.sin_coeffs, rc.samples));
    }

    std::vector<KernelPoint> pts(static_cast<std::size_t>(rc.num_points));
    for (KernelPoint& p : pts) {
        p.r = rng.uniform(rc.r_min, rc.r_max);
        p.phi = rng.uniform(-kPi, kPi);
    }

    Report rep;
    const double h = rc.fd_step;
    for (std::size_t k = 0; k < data.size(); ++k) {
        const PeriodicFunction& g = data[k];
        std::vector<double> shifted = g.samples();
        const double mu = g.mean();
        for (double& v : shifted) v -= mu;
        const PeriodicFunction gz = PeriodicFunction::from_samples(std::move(shifted));

        const disk::DiskField fu(g, disk::DiskKind::dirichlet);
        const disk::DiskField fw(gz, disk::DiskKind::neumann);

        double worst_u = 0.0, worst_w = 0.0;
        for (const KernelPoint& p : pts) {
            const Vec2 x{p.r * std::cos(p.phi), p.r * std::sin(p.phi)};
            const Vec2 du_fd{(fu.value({x.x + h, x.y}) - fu.value({x.x - h, x.y})) / (2 * h),
                             (fu.value({x.x, x.y + h}) - fu.value({x.x, x.y - h})) / (2 * h)};
            const Vec2 dw_fd{(fw.value({x.x + h, x.y}) - fw.value({x.x - h, x.y})) / (2 * h),
                             (fw.value({x.x, x.y + h}) - fw.value({x.x, x.y - h})) / (2 * h)};
            const Vec2 du = fu.gradient(p.r, p.phi);
            const Vec2 dw = fw.gradient(p.r, p.phi);
            worst_u = std::max(worst_u, (du_fd - du).norm() / (1.0 + du.norm()));
            worst_w = std::max(worst_w, (dw_fd - dw).norm() / (1.0 + dw.norm()));
        }
        const double rot = disk::rotation_identity_residual(g, pts);
        const std::string tag = "[" + std::to_string(k) + "]";
        rep.add("relation.dirichlet_gradient" + tag, worst_u, rc.tol);
        rep.add("relation.neumann_gradient" + tag, worst_w, rc.tol);
        rep.add("relation.rotation" + tag, rot, rc.rotation_tol);
    }
    return rep;
}

namespace {

void kernel_identity_checks(Report& rep, double ts) {
    const int N = 512;
    double worst_norm = 0.0;
    for (double r : {0.0, 0.2, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5, 1.8, 2.0}) {
        const double phi = 0.37;
        double sum = 0.0;
        for (int j = 0; j < N; ++j) {
            const double tau = -kPi + kTwoPi * j / N;
            sum += eval_poisson({r, tau - phi});
        }
        sum /= N;
        worst_norm = std::max(worst_norm, std::abs(sum - (r < 1 ? 1.0 : -1.0)));
    }
    rep.add("identity.poisson_normalization", worst_norm, 1e-10 * ts);

    double odd = 0.0;
    for (double r : {0.4, 0.85, 1.6}) {
        double sum = 0.0;
        for (int j = 0; j < N; ++j) sum += eval_conjugate({r, -kPi + kTwoPi * j / N});
        odd = std::max(odd, std::abs(sum / N));
    }
    rep.add("identity.conjugate_odd_mean", odd, 1e-12 * ts);

    double min_inside = 1e300, max_outside = -1e300;
    for (int i = 1; i <= 9; ++i)
        for (int j = 0; j < 64; ++j) {
            const double phi = -kPi + kTwoPi * j / 64;
            min_inside = std::min(min_inside, eval_poisson({0.1 * i, phi}));
            max_outside = std::max(max_outside, eval_poisson({1.0 + 0.15 * i, phi}));
        }
    rep.add_min("identity.poisson_positive_inside", min_inside, 0.0);
    rep.add("identity.poisson_negative_outside", max_outside, 0.0);
}

void greens_identity_checks(Report& rep, const IdentityConfig& ic, Rng& rng, double R,
                            double ts) {
    const greens::GreensContext ctx{R};
    const std::string tag = "[R=" + short_number(R) + "]";

    double worst_inv = 0.0;
    for (int i = 0; i < ic.pairs; ++i) {
        const Vec2 x = random_annulus_point(rng, 1.05 * R, 3.0 * R);
        const Vec2 xs = greens::invert(ctx, x);
        const Vec2 back = greens::invert(ctx, xs);
        worst_inv = std::max(worst_inv, (back - x).norm() / R);
        worst_inv = std::max(worst_inv, std::abs(xs.norm() * x.norm() - R * R) / (R * R));
    }
    rep.add("identity.inversion_involution" + tag, worst_inv, 1e-13 * ts);

    double worst_log = 0.0;
    for (int i = 0; i < ic.pairs; ++i) {
        const Vec2 x = random_annulus_point(rng, 1.05 * R, 3.0 * R);
        const Vec2 y = random_annulus_point(rng, 1.05 * R, 3.0 * R);
        worst_log = std::max(worst_log, greens::log_reflection_residual(ctx, x, y));
    }
    rep.add("identity.log_reflection" + tag, worst_log, 1e-12 * ts);

    double worst_match = 0.0;
    for (int i = 0; i < ic.num_x; ++i) {
        const Vec2 x = random_annulus_point(rng, 1.2 * R, 2.0 * R);
        for (int jj = 0; jj < ic.boundary_nodes; ++jj) {
            const double theta = -kPi + kTwoPi * jj / ic.boundary_nodes;
            worst_match = std::max(worst_match, greens::boundary_match_residual(ctx, x, theta));
        }
    }
    rep.add("identity.boundary_flux_match" + tag, worst_match, 1e-8 * ts);

    const double k_target = 1.0 / (kPi * R * R);
    const double h1 = ic.fd_h_rel * R;
    double worst_err = 0.0, worst_order_dev = 0.0;
    for (int i = 0; i < ic.num_x; ++i) {
        const Vec2 x = random_annulus_point(rng, 1.3 * R, 1.8 * R);
        Vec2 y{};
        const Vec2 xs = greens::invert(ctx, x);
        do {
            y = random_annulus_point(rng, 1.1 * R, 1.6 * R);
        } while ((y - xs).norm() < 0.4 * R);
        const double e1 = std::abs(greens::corrector_laplacian_fd(ctx, x, y, h1) + k_target) / k_target;
        const double e2 =
            std::abs(greens::corrector_laplacian_fd(ctx, x, y, 0.5 * h1) + k_target) / k_target;
        worst_err = std::max(worst_err, e1);
        worst_order_dev = std::max(worst_order_dev, std::abs(e1 / (e2 + 1e-300) - 4.0));
    }
    rep.add("identity.corrector_laplacian" + tag, worst_err, 1e-3 * ts);
    rep.add("identity.corrector_laplacian_order" + tag, worst_order_dev, 1.8);

    const auto recon = greens::reconstruction_check(ctx, ic.collar_over_R * R);
    rep.add("identity.reconstruction_spread" + tag, recon.spread, 1e-6 * (1 + R * R) * ts);
    rep.add("identity.reconstruction_constant" + tag, recon.constant_gap,
            1e-6 * (1 + R * R) * ts);

    // single layers of pure modes against the closed-form exterior potential
    double worst_layer = 0.0;
    for (int m = 1; m <= 3; ++m) {
        std::vector<double> cc(static_cast<std::size_t>(m) + 1, 0.0);
        cc.back() = 1.0;
        const PeriodicFunction g = PeriodicFunction::from_trig_poly(cc, {}, ic.boundary_nodes);
        for (double rho_f : {1.3, 1.7, 2.5})
            for (double phi : {0.4, 2.1, -2.8}) {
                const double rho = rho_f * R;
                const Vec2 x{rho * std::cos(phi), rho * std::sin(phi)};
                const double expect = -(R / m) * std::pow(R / rho, m) * std::cos(m * phi);
                const double got = greens::boundary_layer(ctx, g, x, greens::LayerSign::minus);
                worst_layer = std::max(worst_layer, std::abs(got - expect) / R);
            }
    }
    rep.add("identity.layer_closed_form" + tag, worst_layer, 1e-10 * ts);

    // the radial derivative of the layer converges to the datum at the boundary
    double worst_ratio = 1e300, worst_near = 0.0;
    for (int m = 1; m <= 3; ++m) {
        std::vector<double> cc(static_cast<std::size_t>(m) + 1, 0.0);
        cc.back() = 1.0;
        const PeriodicFunction g = PeriodicFunction::from_trig_poly(cc, {}, ic.boundary_nodes);
        auto trace_err = [&](double eps) {
            double worst = 0.0;
            for (double phi : {0.3, 1.9, -1.1}) {
                const double rho = R * (1 + eps);
                const Vec2 x{rho * std::cos(phi), rho * std::sin(phi)};
                const Vec2 grad = greens::boundary_layer_grad(ctx, g, x, greens::LayerSign::minus);
                const double dn = dot(grad, x / rho);
                worst = std::max(worst, std::abs(dn - std::cos(m * phi)));
            }
            return worst;
        };
        const double e_far = trace_err(0.1), e_near = trace_err(0.05);
        worst_ratio = std::min(worst_ratio, e_far / (e_near + 1e-300));
        worst_near = std::max(worst_near, e_near);
    }
    rep.add_min("identity.layer_trace_convergence" + tag, worst_ratio, 1.5);
    rep.add("identity.layer_trace_near_error" + tag, worst_near, 0.3);
}

void trace_identity_checks(Report& rep, const IdentityConfig& ic, Rng& rng) {
    int violations = 0;
    double max_ratio = 0.0;
    for (int f = 0; f < ic.trace_fields; ++f) {
        const metrics::TraceField phi = metrics::random_trace_field(rng, 4, 6);
        for (const auto& ab : ic.trace_annuli)
            for (double rho_eval : {ab[0], ab[1]}) {
                const auto [lhs, rhs] = metrics::check_trace_inequality(ab[0], ab[1], phi, rho_eval);
                if (lhs > rhs * (1 + 1e-12)) ++violations;
                if (rhs > 0) max_ratio = std::max(max_ratio, lhs / rhs);
            }
    }
    rep.add("identity.trace_violations", violations, 0.0);
    rep.add("identity.trace_max_ratio", max_ratio, 1.0 + 1e-12);
}

}  // namespace

Report run_identity_suite(const Config& cfg) {
    const IdentityConfig& ic = cfg.identities;
    Rng rng(cfg.seed + 1);
    Report rep;
    kernel_identity_checks(rep, ic.tol_scale);
    for (double R : ic.R_values) greens_identity_checks(rep, ic, rng, R, ic.tol_scale);
    trace_identity_checks(rep, ic, rng);
    return rep;
}

}  // namespace circpot::harness
