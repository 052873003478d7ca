// Integration acceptance checks, one printed line per criterion.
// Usage: circpot_acceptance <cli-binary> <configs-dir> <l1-snapshot-file>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "circpot/disk_solvers.hpp"
#include "circpot/greens_annulus.hpp"
#include "circpot/harness.hpp"
#include "circpot/holed_domain.hpp"
#include "circpot/kernels.hpp"
#include "circpot/regularity_metrics.hpp"
#include "circpot/rng.hpp"

using namespace circpot;

namespace {

int g_failures = 0;

// body returns an empty string on success, a diagnostic otherwise
void criterion(int idx, double budget_seconds, const std::function<std::string()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    try {
        detail = body();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (detail.empty() && budget_seconds > 0.0 && elapsed > budget_seconds) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "time budget exceeded: %.1f s > %.0f s", elapsed, budget_seconds);
        detail = buf;
    }
    if (detail.empty()) {
        std::printf("PASS criterion %d\n", idx);
    } else {
        std::printf("FAIL criterion %d : %s\n", idx, detail.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

holed::HoledDomain eccentric_domain() {
    holed::HoledDomain dom;
    dom.z0 = {0.0, 0.0};
    dom.r0 = 1.0;
    dom.holes = {{{0.35, 0.0}, 0.15}, {{-0.35, 0.0}, 0.15}};
    dom.d = 0.15;
    return dom;
}

NeumannData eccentric_data() {
    NeumannData data;
    data.outer = PeriodicFunction::from_trig_poly({0.15, 1.0}, {}, 256);
    data.holes.push_back(PeriodicFunction::from_trig_poly({0.5, 0.8}, {}, 256));
    data.holes.push_back(PeriodicFunction::from_trig_poly({0.5, 0.0, -0.3}, {0.4}, 256));
    return data;
}

std::string read_file(const std::string& path, bool& ok) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ok = false;
        return {};
    }
    std::ostringstream os;
    os << in.rdbuf();
    ok = true;
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 4) {
        std::fprintf(stderr, "usage: %s <cli-binary> <configs-dir> <l1-snapshot-file>\n", argv[0]);
        return 2;
    }
    const std::string cli = argv[1];
    const std::string configs = argv[2];
    const std::string snapshot_path = argv[3];

    // 1: quadrature of the sign-valued kernel integral on both sides of the circle
    criterion(1, 1.0, [] {
        constexpr int N = 512;
        double worst = 0.0;
        for (double r : {0.3, 0.7, 1.3, 1.8}) {
            double s = 0.0;
            for (int j = 0; j < N; ++j) s += 1.0 / kernel_denominator(r, -kPi + kTwoPi * j / N);
            const double val = (r * r - 1.0) * s / N;
            const double want = r > 1.0 ? 1.0 : -1.0;
            worst = std::max(worst, std::abs(val - want));
        }
        return worst <= 1e-10 ? std::string{} : fmt("worst deviation %.3e > 1e-10", worst);
    });

    // 2: single-mode harmonic extension at an interior point
    criterion(2, 1.0, [] {
        const auto g = PeriodicFunction::from_trig_poly({0.0, 0.0, 0.0, 1.0}, {}, 512);
        const double u = disk::eval_dirichlet(g, 0.5, 0.0);
        const double err = std::abs(u - 0.125);
        return err <= 1e-9 ? std::string{} : fmt("|u - 0.125| = %.3e > 1e-9", err);
    });

    // 3: both boundary-to-gradient formulas against finite differences, plus rotation
    criterion(3, 10.0, [] {
        const auto rep = harness::run_verify_relation(harness::Config{});
        if (rep.pass) return std::string{};
        for (const auto& l : rep.lines)
            if (!l.pass) return l.name + fmt(": %.3e > %.1e", l.value, l.threshold);
        return std::string("report failed");
    });

    // 4: reflection identity, flux matching on the circle, corrector Laplacian
    criterion(4, 30.0, [] {
        const greens::GreensContext ctx{1.0};
        Rng rng(20240917);
        double worst_lr = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const Vec2 x = rng.uniform(1.05, 3.0) * Vec2{std::cos(rng.uniform(-kPi, kPi)),
                                                         std::sin(rng.uniform(-kPi, kPi))};
            const Vec2 y = rng.uniform(1.05, 3.0) * Vec2{std::cos(rng.uniform(-kPi, kPi)),
                                                         std::sin(rng.uniform(-kPi, kPi))};
            worst_lr = std::max(worst_lr, greens::log_reflection_residual(ctx, x, y));
        }
        if (worst_lr > 1e-12) return fmt("log-reflection residual %.3e > 1e-12", worst_lr);

        double worst_bm = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double rho = rng.uniform(1.2, 3.0);
            const double ang = rng.uniform(-kPi, kPi);
            const Vec2 x = rho * Vec2{std::cos(ang), std::sin(ang)};
            for (int j = 0; j < 256; ++j)
                worst_bm = std::max(worst_bm,
                                    greens::boundary_match_residual(ctx, x, -kPi + kTwoPi * j / 256));
        }
        if (worst_bm > 1e-8) return fmt("boundary match residual %.3e > 1e-8", worst_bm);

        const Vec2 x{1.6, 0.4};
        const Vec2 y{-0.3, 0.2};
        const double k = 1.0 / kPi;
        const double h = 4e-3;
        const double e1 = std::abs(greens::corrector_laplacian_fd(ctx, x, y, h) + k);
        const double e2 = std::abs(greens::corrector_laplacian_fd(ctx, x, y, h / 2) + k);
        if (e1 > 1e-3) return fmt("corrector Laplacian error %.3e at h", e1);
        const double ratio = e1 / e2;
        if (!(ratio > 2.5 && ratio < 6.0))
            return fmt("h -> h/2 error ratio %.2f outside [2.5, 6] (e1=%.2e, e2=%.2e)", ratio, e1, e2);
        return std::string{};
    });

    // 5: trace inequality across random fields and annuli, both trace circles
    criterion(5, 30.0, [] {
        Rng rng(33);
        const std::vector<std::pair<double, double>> annuli{
            {1.0, 2.0}, {0.5, 0.8}, {2.0, 3.0}, {0.3, 1.1}, {1.5, 1.7}};
        int checks = 0, violations = 0;
        double worst = 0.0;
        for (int f = 0; f < 50; ++f) {
            const auto phi = metrics::random_trace_field(rng, 4, 6);
            for (const auto& [a, b] : annuli)
                for (const double rho : {a, b}) {
                    const auto [lhs, rhs] = metrics::check_trace_inequality(a, b, phi, rho);
                    ++checks;
                    if (!(lhs <= rhs * (1 + 1e-12))) {
                        ++violations;
                        worst = std::max(worst, lhs / rhs);
                    }
                }
        }
        if (checks != 500) return fmt("expected 500 checks, ran %g", static_cast<double>(checks));
        if (violations > 0)
            return fmt("%g violations, worst lhs/rhs = %.6f", static_cast<double>(violations), worst);
        return std::string{};
    });

    // 6: concentric closed form and eccentric truncation convergence
    criterion(6, 60.0, [] {
        holed::HoledDomain ann;
        ann.z0 = {0.0, 0.0};
        ann.r0 = 2.0;
        ann.holes = {{{0.0, 0.0}, 1.0}};
        ann.d = 0.5;
        NeumannData data;
        data.outer = PeriodicFunction::from_trig_poly({0.0, 1.0}, {}, 128);
        data.holes.push_back(PeriodicFunction::from_trig_poly({0.0}, {}, 128));
        const auto a = holed::solve_neumann_holed(ann, data, 8, 64);
        const double ea = std::hypot(a.interior[0].real() - 4.0 / 3.0, a.interior[0].imag());
        const double eb =
            std::hypot(a.holes[0].coeffs[0].real() - 4.0 / 3.0, a.holes[0].coeffs[0].imag());
        if (ea > 1e-10 || eb > 1e-10)
            return fmt("annulus coefficients off by %.3e / %.3e > 1e-10", ea, eb);

        const auto dom = eccentric_domain();
        const auto gdata = eccentric_data();
        const auto a24 = holed::solve_neumann_holed(dom, gdata, 24, 128);
        if (a24.boundary_residual > 1e-8)
            return fmt("M=24 residual %.3e > 1e-8", a24.boundary_residual);
        const auto a8 = holed::solve_neumann_holed(dom, gdata, 8, 64);
        const auto a16 = holed::solve_neumann_holed(dom, gdata, 16, 96);
        const double gain = a8.boundary_residual / a16.boundary_residual;
        if (!(gain >= 10.0))
            return fmt("M=8 -> M=16 residual gain %.2f < 10 (%.2e -> %.2e)", gain,
                       a8.boundary_residual, a16.boundary_residual);
        return std::string{};
    });

    // 7: empirical L1 constant over the default sweep, snapshot regression
    criterion(7, 0.0, [&] {
        const auto res = harness::run_sweep(harness::Config{});
        if (res.records.size() < 12)
            return fmt("only %g instances", static_cast<double>(res.records.size()));
        const double l1 = res.l1_max;
        if (!std::isfinite(l1) || l1 <= 0.0) return fmt("L1 ratio max %.3e not usable", l1);
        std::ifstream in(snapshot_path);
        double snap = 0.0;
        if (!(in >> snap) || !(snap > 0.0))
            return fmt("snapshot unreadable; measured max %.12g", l1);
        if (std::abs(l1 - snap) > 0.05 * snap)
            return fmt("L1 max %.6g deviates from snapshot %.6g by more than 5%%", l1, snap);
        return std::string{};
    });

    // 8: scaling stability of the four estimate ratios over the d/r0 x n sweep
    criterion(8, 600.0, [] {
        harness::Config cfg;
        cfg.families.clear();
        harness::GeometryFamily fam;
        fam.n = {1, 2, 4};
        fam.r0 = {1.0};
        fam.d_over_r0 = {0.05, 0.1, 0.2};
        fam.hole_radius_over_d = 1.0;
        cfg.families = {fam};
        const auto res = harness::run_sweep(cfg);
        if (res.records.size() != 9)
            return fmt("expected 9 instances, got %g", static_cast<double>(res.records.size()));

        std::string detail;
        for (int i = 0; i < 4; ++i) {
            double vmin = std::numeric_limits<double>::infinity(), vmax = 0.0;
            double at_small = 0.0, at_large = 0.0;  // max over n at extreme d values
            for (const auto& rec : res.records) {
                const double v = rec.ratios[static_cast<std::size_t>(i)];
                if (!std::isfinite(v) || v <= 0.0) return fmt("ratio%.0f not finite", i + 1.0);
                vmin = std::min(vmin, v);
                vmax = std::max(vmax, v);
                if (rec.d < 0.075) at_small = std::max(at_small, v);
                if (rec.d > 0.15) at_large = std::max(at_large, v);
            }
            const double spread = vmax / vmin;
            if (spread >= 10.0)
                detail += fmt("ratio%.0f spread %.3g (>=10); ", i + 1.0, spread);
            if (!(at_large >= 0.1 * at_small))
                detail += fmt("ratio%.0f decays with d: %.3g at d=0.2 vs %.3g at d=0.05; ", i + 1.0,
                              at_large, at_small);
        }
        return detail;
    });

    // 9: interior derivative estimate stable in d for fixed fields
    criterion(9, 30.0, [] {
        holed::HoledDomain dom;
        dom.z0 = {0.0, 0.0};
        dom.r0 = 1.0;
        dom.d = 0.4;

        struct Case {
            std::vector<double> cos_coeffs;
            std::vector<Vec2> probes;
            int order;
        };
        const std::vector<Case> cases{
            {{1.2, 1.0}, {{0.0, 0.0}, {0.3, 0.1}, {-0.2, 0.25}}, 0},
            {{0.0, 1.0}, {{0.0, 0.0}, {0.0, 0.25}, {0.0, -0.3}}, 1},
            {{0.0, 0.0, 1.0}, {{0.0, 0.0}}, 2},
        };
        for (std::size_t ci = 0; ci < cases.size(); ++ci) {
            const auto& c = cases[ci];
            const auto g = PeriodicFunction::from_trig_poly(c.cos_coeffs, {}, 256);
            const disk::DiskField f(g, disk::DiskKind::dirichlet);
            const auto ev = metrics::make_evaluator(f);
            double vmin = std::numeric_limits<double>::infinity(), vmax = 0.0;
            for (const double d : {0.1, 0.2, 0.4}) {
                const double r = metrics::check_interior_estimate(ev, dom, c.probes, d, c.order);
                if (!std::isfinite(r) || r <= 0.0 || r > 100.0)
                    return fmt("order-%g ratio %.3e unbounded", static_cast<double>(c.order), r);
                vmin = std::min(vmin, r);
                vmax = std::max(vmax, r);
            }
            if (vmax / vmin > 2.0)
                return fmt("order-%g ratios vary by %.3f > 2 across d", static_cast<double>(c.order),
                           vmax / vmin);
        }
        return std::string{};
    });

    // 10: byte-identical sweep output for a repeated run
    criterion(10, 0.0, [&] {
        const std::string outa = "acceptance_sweep_a.csv";
        const std::string outb = "acceptance_sweep_b.csv";
        for (const auto& [out, tag] : {std::pair{outa, "first"}, std::pair{outb, "second"}}) {
            const std::string cmd =
                cli + " sweep --config " + configs + "/determinism.json --out " + out + " 2>/dev/null";
            const int rc = std::system(cmd.c_str());
            if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0)
                return std::string(tag) + fmt(" run exited with status %g",
                                              WIFEXITED(rc) ? WEXITSTATUS(rc) : -1.0);
        }
        bool oka = false, okb = false;
        const std::string ca = read_file(outa, oka);
        const std::string cb = read_file(outb, okb);
        if (!oka || !okb) return std::string("sweep output files missing");
        if (ca.empty()) return std::string("sweep output empty");
        if (ca != cb) return std::string("outputs differ between runs");
        return std::string{};
    });

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
    } else {
        std::printf("%d criteria failed\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
