#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "circpot/harness.hpp"
#include "circpot/regularity_metrics.hpp"

namespace circpot::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* kCsvHeader =
    "n,d,r0,alpha,C_P,B,g_sup,g_hold,gp_sup,gp_hold,Du_sup,Du_hold,D2u_sup,D2u_hold,"
    "bound1,bound2,bound3,bound4,ratio1,ratio2,ratio3,ratio4,residual,flags";

struct DatumNorms {
    double sup = 0.0, hold = 0.0, dsup = 0.0, dhold = 0.0;
};

DatumNorms measure_data(const NeumannData& data, const holed::HoledDomain& dom, double alpha) {
    DatumNorms n;
    auto absorb = [&](const PeriodicFunction& g, double radius) {
        n.sup = std::max(n.sup, g.max_abs());
        n.hold = std::max(n.hold, holder_seminorm_circle(g, alpha, radius));
        const PeriodicFunction gp = g.derivative().scaled(1.0 / radius);
        n.dsup = std::max(n.dsup, gp.max_abs());
        n.dhold = std::max(n.dhold, holder_seminorm_circle(gp, alpha, radius));
    };
    absorb(data.outer, dom.r0);
    for (int k = 0; k < dom.n(); ++k) absorb(data.holes[static_cast<std::size_t>(k)],
                                             dom.holes[static_cast<std::size_t>(k)].radius);
    return n;
}

void mark_unmeasured(SweepRecord& rec) {
    rec.C_P = rec.B = kNaN;
    rec.g_sup = rec.g_hold = rec.gp_sup = rec.gp_hold = kNaN;
    rec.Du_sup = rec.Du_hold = rec.D2u_sup = rec.D2u_hold = kNaN;
    rec.bounds = {kNaN, kNaN, kNaN, kNaN};
    rec.ratios = {kNaN, kNaN, kNaN, kNaN};
    rec.residual = kNaN;
}

void append_row(std::ostringstream& out, const SweepRecord& r) {
    out << r.n << ',' << format_number(r.d) << ',' << format_number(r.r0) << ','
        << format_number(r.alpha) << ',' << format_number(r.C_P) << ',' << format_number(r.B)
        << ',' << format_number(r.g_sup) << ',' << format_number(r.g_hold) << ','
        << format_number(r.gp_sup) << ',' << format_number(r.gp_hold) << ','
        << format_number(r.Du_sup) << ',' << format_number(r.Du_hold) << ','
        << format_number(r.D2u_sup) << ',' << format_number(r.D2u_hold);
    for (double b : r.bounds) out << ',' << format_number(b);
    for (double q : r.ratios) out << ',' << format_number(q);
    out << ',' << format_number(r.residual) << ',' << r.flags << '\n';
}

}  // namespace

Instance make_instance(const Config& cfg, int n, double r0, double d_over_r0,
                       double hole_radius_over_d) {
    const double d = d_over_r0 * r0;
    const double rk = hole_radius_over_d * d;

    Instance inst;
    inst.dom.z0 = {0.0, 0.0};
    inst.dom.r0 = r0;
    inst.dom.d = d;
    if (n == 1) {
        inst.dom.holes.push_back({{0.0, 0.0}, rk});
    } else {
        // smallest ring for which adjacent holes clear the separation margin;
        // the 1e-9 slack keeps the comparisons out of round-off ties
        const double ring =
            (2.0 * d + 2.0 * rk) / (2.0 * std::sin(kPi / n)) * (1.0 + 1e-9);
        for (int k = 0; k < n; ++k) {
            const double th = kTwoPi * k / n + 0.5;
            inst.dom.holes.push_back({{ring * std::cos(th), ring * std::sin(th)}, rk});
        }
    }

    // hole data keep their shape; the outer constant term is set so the net
    // fluxes balance exactly
    const double hole_mean =
        cfg.hole_datum.cos_coeffs.empty() ? 0.0 : cfg.hole_datum.cos_coeffs[0];
    std::vector<double> oc = cfg.outer_datum.cos_coeffs;
    if (oc.empty()) oc.push_back(0.0);
    oc[0] = n * rk * hole_mean / r0;
    inst.data.outer =
        PeriodicFunction::from_trig_poly(oc, cfg.outer_datum.sin_coeffs, cfg.datum_samples);
    for (int k = 0; k < n; ++k)
        inst.data.holes.push_back(PeriodicFunction::from_trig_poly(
            cfg.hole_datum.cos_coeffs, cfg.hole_datum.sin_coeffs, cfg.datum_samples));
    return inst;
}

SweepResult run_sweep(const Config& cfg) {
    SweepResult out;
    out.max_ratios = {0.0, 0.0, 0.0, 0.0};

    for (const GeometryFamily& fam : cfg.families)
        for (int n : fam.n)
            for (double r0 : fam.r0)
                for (double dr : fam.d_over_r0) {
                    SweepRecord rec;
                    rec.n = n;
                    rec.r0 = r0;
                    rec.alpha = cfg.alpha;
                    Instance inst = make_instance(cfg, n, r0, dr, fam.hole_radius_over_d);
                    rec.d = inst.dom.d;

                    const auto geo = holed::validate_geometry(inst.dom);
                    if (!geo.pass) {
                        rec.flags = "geometry_fail";
                        mark_unmeasured(rec);
                        out.tolerance_ok = false;
                        out.records.push_back(std::move(rec));
                        continue;
                    }

                    std::vector<std::string> flags;
                    rec.C_P = holed::estimate_poincare(
                        inst.dom, inst.dom.d / cfg.metrics.poincare_step_divisor);
                    const auto B = holed::constant_B(inst.dom, rec.C_P);
                    rec.B = B.value;
                    if (B.degenerate) flags.push_back("B_degenerate");

                    const holed::HarmonicAnsatz a = holed::solve_neumann_holed(
                        inst.dom, inst.data, cfg.solver.M, cfg.solver.nodes_per_circle);
                    rec.residual = a.boundary_residual;
                    if (rec.residual > cfg.solver.residual_tol) {
                        flags.push_back("residual_exceeds_tol");
                        out.tolerance_ok = false;
                    }

                    const DatumNorms dn = measure_data(inst.data, inst.dom, cfg.alpha);
                    rec.g_sup = dn.sup;
                    rec.g_hold = dn.hold;
                    rec.gp_sup = dn.dsup;
                    rec.gp_hold = dn.dhold;

                    const auto pts = metrics::domain_sample_points(
                        inst.dom, cfg.metrics.collar_radial, cfg.metrics.collar_angular,
                        inst.dom.d / cfg.metrics.interior_step_divisor);
                    const metrics::FieldEvaluator ev = metrics::make_evaluator(a);
                    const metrics::SampledField field =
                        metrics::sample_field(ev, pts, "domain", 2);
                    rec.Du_sup = metrics::sup_norm(field, 1);
                    rec.Du_hold = metrics::holder_seminorm_region(field, cfg.alpha, 1);
                    rec.D2u_sup = metrics::sup_norm(field, 2);
                    rec.D2u_hold = metrics::holder_seminorm_region(field, cfg.alpha, 2);

                    const double d = rec.d, al = cfg.alpha;
                    rec.bounds[0] = (1 + rec.B * std::pow(d, -4.0) * r0) * rec.g_sup +
                                    std::pow(r0, al) * rec.g_hold;
                    rec.bounds[1] =
                        (std::pow(d, -al) + rec.B * std::pow(d, -5.0) * std::pow(r0, 2 - al)) *
                            rec.g_sup +
                        rec.g_hold;
                    rec.bounds[2] = (1 / d + rec.B * std::pow(d, -5.0) * r0) * rec.g_sup +
                                    std::pow(d, al - 1) * rec.g_hold + rec.gp_sup +
                                    std::pow(r0, al) * rec.gp_hold;
                    rec.bounds[3] =
                        (std::pow(d, -1 - al) + rec.B * std::pow(d, -6.0) * std::pow(r0, 2 - al)) *
                            rec.g_sup +
                        rec.g_hold / d + std::pow(d, -al) * rec.gp_sup + rec.gp_hold;

                    rec.ratios[0] = rec.Du_sup / rec.bounds[0];
                    rec.ratios[1] = rec.Du_hold / rec.bounds[1];
                    rec.ratios[2] = rec.D2u_sup / rec.bounds[2];
                    rec.ratios[3] = rec.D2u_hold / rec.bounds[3];

                    rec.l1_ratio =
                        B.degenerate ? 0.0 : metrics::check_l1_bound(inst.dom, inst.data, a, rec.B);
                    out.l1_max = std::max(out.l1_max, rec.l1_ratio);

                    for (int q = 0; q < 4; ++q)
                        out.max_ratios[static_cast<std::size_t>(q)] =
                            std::max(out.max_ratios[static_cast<std::size_t>(q)],
                                     rec.ratios[static_cast<std::size_t>(q)]);

                    if (flags.empty()) {
                        rec.flags = "ok";
                    } else {
                        rec.flags = flags[0];
                        for (std::size_t i = 1; i < flags.size(); ++i) rec.flags += ";" + flags[i];
                    }
                    out.records.push_back(std::move(rec));
                }

    std::ostringstream csv;
    csv << kCsvHeader << '\n';
    for (const SweepRecord& r : out.records) append_row(csv, r);
    csv << ",,,,,,,,,,,,,,,,,,";  // summary row carries only the ratio maxima
    for (double q : out.max_ratios) csv << format_number(q) << ',';
    csv << ",summary\n";
    out.csv = csv.str();
    return out;
}

std::string SweepResult::summary_text() const {
    std::ostringstream out;
    int flagged = 0;
    for (const SweepRecord& r : records)
        if (r.flags != "ok" && r.flags != "B_degenerate") ++flagged;
    out << "instances: " << records.size() << "  flagged: " << flagged << "\n";
    out << "max bound ratios:";
    for (double q : max_ratios) out << ' ' << format_number(q);
    out << "\nmax L1 ratio: " << format_number(l1_max) << "\n";
    out << (tolerance_ok ? "all rows within tolerance\n" : "tolerance breached\n");
    return out.str();
}

SolveOutput run_solve(const Config& cfg) {
    Instance inst = make_instance(cfg, cfg.solve.n, cfg.solve.r0, cfg.solve.d_over_r0, 1.0);
    const auto geo = holed::validate_geometry(inst.dom);
    if (!geo.pass) throw ConfigError("config: solve geometry violates the domain hypotheses");

    SolveOutput out;
    out.ansatz = holed::solve_neumann_holed(inst.dom, inst.data, cfg.solver.M,
                                            cfg.solver.nodes_per_circle);

    const auto quad = holed::domain_quadrature(inst.dom, inst.dom.d / 2.0);
    const std::size_t stride =
        std::max<std::size_t>(1, quad.points.size() / static_cast<std::size_t>(cfg.solve.num_probes));
    std::ostringstream csv;
    csv << "x,y,u,du_x,du_y,d2u_xx,d2u_xy,d2u_yy\n";
    int emitted = 0;
    for (std::size_t i = 0; i < quad.points.size() && emitted < cfg.solve.num_probes;
         i += stride, ++emitted) {
        const Vec2 p = quad.points[i];
        const auto e = holed::eval_ansatz(out.ansatz, p, 2);
        csv << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(e.value)
            << ',' << format_number(e.gradient.x) << ',' << format_number(e.gradient.y) << ','
            << format_number(e.hessian.xx) << ',' << format_number(e.hessian.xy) << ','
            << format_number(e.hessian.yy) << '\n';
    }
    out.probe_csv = csv.str();

    std::ostringstream txt;
    txt << "holes: " << inst.dom.n() << "  r0: " << format_number(inst.dom.r0)
        << "  d: " << format_number(inst.dom.d) << "\n";
    txt << "truncation: " << out.ansatz.truncation
        << "  boundary residual: " << format_number(out.ansatz.boundary_residual)
        << "  condition estimate: " << format_number(out.ansatz.cond_estimate) << "\n";
    txt << "additive constant: " << format_number(out.ansatz.constant) << "\n";
    out.summary_text = txt.str();
    return out;
}

}  // namespace circpot::harness
