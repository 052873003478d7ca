#include "circpot/holed_domain.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace circpot::holed {

double HoledDomain::area() const {
    double a = r0 * r0;
    for (const auto& h : holes) a -= h.radius * h.radius;
    return kPi * a;
}

bool HoledDomain::contains(Vec2 x, double margin) const {
    if ((x - z0).norm() > r0 - margin) return false;
    for (const auto& h : holes)
        if ((x - h.center).norm() < h.radius + margin) return false;
    return true;
}

GeometryReport validate_geometry(const HoledDomain& dom) {
    GeometryReport rep;
    double d_radii = std::numeric_limits<double>::infinity();
    double d_contain = std::numeric_limits<double>::infinity();
    double d_sep = std::numeric_limits<double>::infinity();
    for (const auto& h : dom.holes) {
        d_radii = std::min(d_radii, h.radius);
        d_contain = std::min(d_contain, dom.r0 - (h.center - dom.z0).norm() - h.radius);
    }
    for (std::size_t i = 0; i < dom.holes.size(); ++i)
        for (std::size_t j = i + 1; j < dom.holes.size(); ++j) {
            double gap = (dom.holes[i].center - dom.holes[j].center).norm() -
                         dom.holes[i].radius - dom.holes[j].radius;
            d_sep = std::min(d_sep, gap / 2.0);
        }
    rep.d_max = std::min({d_radii, d_contain, d_sep, dom.r0 / 2.0});
    if (rep.d_max < 0.0) rep.d_max = 0.0;
    rep.radii_ok = dom.d <= d_radii;
    rep.containment_ok = dom.d <= d_contain;
    rep.separation_ok = dom.d <= d_sep;
    rep.pass = dom.d > 0.0 && dom.d <= rep.d_max;
    return rep;
}

BConstant constant_B(const HoledDomain& dom, double poincare) {
    if (!(poincare > 0.0)) throw std::invalid_argument("constant_B: C_P must be positive");
    if (dom.n() == 0) return {0.0, true};
    double b = std::sqrt(dom.area()) * poincare *
               (poincare / std::sqrt(dom.d) + std::sqrt(dom.d)) *
               std::sqrt(static_cast<double>(dom.n())) * std::sqrt(dom.r0);
    return {b, false};
}

namespace {

std::complex<double> zeta_of(const Vec2& x, const Vec2& center) {
    return {x.x - center.x, x.y - center.y};
}

// holomorphic derivative pieces of the ansatz at x: F = value potential,
// returns (value, F', F'') with the log terms' real parts handled separately
struct AnsatzParts {
    double value = 0.0;
    std::complex<double> fp{0.0, 0.0};
    std::complex<double> fpp{0.0, 0.0};
};

AnsatzParts ansatz_parts(const HarmonicAnsatz& a, Vec2 x, int order) {
    AnsatzParts out;
    std::complex<double> z0 = zeta_of(x, a.z0);
    // interior power series, Horner in z
    std::complex<double> v{0.0, 0.0}, dp{0.0, 0.0}, dpp{0.0, 0.0};
    for (int m = static_cast<int>(a.interior.size()); m >= 1; --m) {
        const auto c = a.interior[static_cast<std::size_t>(m - 1)];
        if (order >= 1) dp = dp * z0 + static_cast<double>(m) * c;
        v = v * z0 + c;
    }
    if (order >= 2)
        for (int m = static_cast<int>(a.interior.size()); m >= 2; --m) {
            const auto c = a.interior[static_cast<std::size_t>(m - 1)];
            dpp = dpp * z0 + static_cast<double>(m) * (m - 1.0) * c;
        }
    // v collected sum c_m z^{m-1}, dp is exactly the derivative, dpp the second
    out.value += (v * z0).real();
    if (order >= 1) out.fp += dp;
    if (order >= 2) out.fpp += dpp;

    for (const auto& hole : a.holes) {
        std::complex<double> zk = zeta_of(x, hole.center);
        std::complex<double> iz = 1.0 / zk;
        if (hole.log_strength != 0.0) {
            out.value += hole.log_strength * std::log(std::abs(zk));
            if (order >= 1) out.fp += hole.log_strength * iz;
            if (order >= 2) out.fpp -= hole.log_strength * iz * iz;
        }
        std::complex<double> w{0.0, 0.0}, wp{0.0, 0.0}, wpp{0.0, 0.0};
        for (int m = static_cast<int>(hole.coeffs.size()); m >= 1; --m) {
            const auto c = hole.coeffs[static_cast<std::size_t>(m - 1)];
            if (order >= 2) wpp = wpp * iz + static_cast<double>(m) * (m + 1.0) * c;
            if (order >= 1) wp = wp * iz + static_cast<double>(m) * c;
            w = w * iz + c;
        }
        out.value += (w * iz).real();
        if (order >= 1) out.fp -= wp * iz * iz;
        if (order >= 2) out.fpp += wpp * iz * iz * iz;
    }
    return out;
}

void require_inside(const HarmonicAnsatz& a, Vec2 x) {
    constexpr double margin = 1e-9;
    if ((x - a.z0).norm() > a.r0 - margin)
        throw std::domain_error("eval_ansatz: point outside the outer circle");
    for (const auto& h : a.holes)
        if ((x - h.center).norm() < h.radius + margin)
            throw std::domain_error("eval_ansatz: point inside a hole");
}

}  // namespace

double ansatz_value(const HarmonicAnsatz& a, Vec2 x) {
    require_inside(a, x);
    return ansatz_parts(a, x, 0).value + a.constant;
}

Vec2 ansatz_gradient(const HarmonicAnsatz& a, Vec2 x) {
    require_inside(a, x);
    auto p = ansatz_parts(a, x, 1);
    return {p.fp.real(), -p.fp.imag()};
}

Mat2 ansatz_hessian(const HarmonicAnsatz& a, Vec2 x) {
    require_inside(a, x);
    auto p = ansatz_parts(a, x, 2);
    return {p.fpp.real(), -p.fpp.imag(), -p.fpp.real()};
}

AnsatzEval eval_ansatz(const HarmonicAnsatz& a, Vec2 x, int order) {
    if (order < 0 || order > 2) throw std::invalid_argument("eval_ansatz: order must be 0, 1 or 2");
    require_inside(a, x);
    auto p = ansatz_parts(a, x, order);
    AnsatzEval out;
    out.value = p.value + a.constant;
    if (order >= 1) out.gradient = {p.fp.real(), -p.fp.imag()};
    if (order >= 2) out.hessian = {p.fpp.real(), -p.fpp.imag(), -p.fpp.real()};
    return out;
}

double ansatz_flux(const HarmonicAnsatz& a, int hole, double radius, int nodes) {
    if (hole < 0 || hole >= static_cast<int>(a.holes.size()))
        throw std::invalid_argument("ansatz_flux: bad hole index");
    const Vec2 c = a.holes[static_cast<std::size_t>(hole)].center;
    double acc = 0.0;
    for (int i = 0; i < nodes; ++i) {
        double t = -kPi + kTwoPi * i / nodes;
        Vec2 nu{std::cos(t), std::sin(t)};
        Vec2 x = c + radius * nu;
        acc += dot(ansatz_gradient(a, x), nu);
    }
    return acc * kTwoPi * radius / nodes;
}

DomainQuadrature domain_quadrature(const HoledDomain& dom, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("domain_quadrature: step must be positive");
    DomainQuadrature q;
    q.cell_weight = h * h;
    int half = static_cast<int>(std::ceil(dom.r0 / h));
    for (int iy = -half; iy < half; ++iy)
        for (int ix = -half; ix < half; ++ix) {
            Vec2 p{dom.z0.x + (ix + 0.5) * h, dom.z0.y + (iy + 0.5) * h};
            if (dom.contains(p)) q.points.push_back(p);
        }
    return q;
}

double ansatz_area_average(const HarmonicAnsatz& a, const HoledDomain& dom, double h) {
    auto q = domain_quadrature(dom, h);
    if (q.points.empty()) throw std::runtime_error("ansatz_area_average: empty quadrature");
    double acc = 0.0;
    for (const auto& p : q.points) acc += ansatz_parts(a, p, 0).value;
    return acc / static_cast<double>(q.points.size()) + a.constant;
}

HarmonicAnsatz solve_neumann_holed(const HoledDomain& dom, const NeumannData& data, int M,
                                   int nodes_per_circle) {
    auto rep = validate_geometry(dom);
    if (!rep.pass) throw std::invalid_argument("solve_neumann_holed: geometry hypotheses fail");
    if (static_cast<int>(data.holes.size()) != dom.n())
        throw std::invalid_argument("solve_neumann_holed: datum component count mismatch");
    if (M < 1) throw std::invalid_argument("solve_neumann_holed: M must be >= 1");
    if (nodes_per_circle < 4 * M + 4)
        throw std::invalid_argument("solve_neumann_holed: need nodes_per_circle >= 4M+4");

    std::vector<double> radii;
    for (const auto& h : dom.holes) radii.push_back(h.radius);
    double flux_scale = dom.r0 * kTwoPi * data.outer.max_abs();
    for (int k = 0; k < dom.n(); ++k)
        flux_scale += radii[static_cast<std::size_t>(k)] * kTwoPi *
                      data.holes[static_cast<std::size_t>(k)].max_abs();
    double defect = compatibility_residual(data, dom.r0, radii);
    if (std::abs(defect) > 1e-8 * (1.0 + flux_scale))
        throw std::invalid_argument("solve_neumann_holed: incompatible flux balance");

    HarmonicAnsatz a;
    a.z0 = dom.z0;
    a.r0 = dom.r0;
    a.truncation = M;
    a.interior.assign(static_cast<std::size_t>(M), {0.0, 0.0});
    for (int k = 0; k < dom.n(); ++k) {
        HoleTerm t;
        t.center = dom.holes[static_cast<std::size_t>(k)].center;
        t.radius = dom.holes[static_cast<std::size_t>(k)].radius;
        t.log_strength = t.radius * data.holes[static_cast<std::size_t>(k)].mean();
        t.coeffs.assign(static_cast<std::size_t>(M), {0.0, 0.0});
        a.holes.push_back(std::move(t));
    }

    const int ncircles = dom.n() + 1;
    const int rows = ncircles * nodes_per_circle;
    const int cols = 2 * M * ncircles;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd rhs(rows);

    auto fill_row = [&](int row, Vec2 x, std::complex<double> e, double target) {
        // columns 0..2M-1: interior modes; then per hole 2M columns
        std::complex<double> z0 = zeta_of(x, dom.z0);
        std::complex<double> zp{1.0, 0.0};
        for (int m = 1; m <= M; ++m) {
            std::complex<double> K = static_cast<double>(m) * zp * e;  // m z^{m-1} e
            A(row, 2 * (m - 1)) = K.real();
            A(row, 2 * (m - 1) + 1) = -K.imag();
            zp *= z0;
        }
        double logs = 0.0;
        for (int k = 0; k < dom.n(); ++k) {
            std::complex<double> zk = zeta_of(x, a.holes[static_cast<std::size_t>(k)].center);
            std::complex<double> iz = 1.0 / zk;
            logs += a.holes[static_cast<std::size_t>(k)].log_strength * (e * iz).real();
            std::complex<double> zn = iz;  // z^{-m-1} built incrementally
            int base = 2 * M * (k + 1);
            for (int m = 1; m <= M; ++m) {
                zn *= iz;
                std::complex<double> K = -static_cast<double>(m) * zn * e;
                A(row, base + 2 * (m - 1)) = K.real();
                A(row, base + 2 * (m - 1) + 1) = -K.imag();
            }
        }
        rhs(row) = target - logs;
    };

    for (int c = 0; c < ncircles; ++c) {
        Vec2 center = c == 0 ? dom.z0 : dom.holes[static_cast<std::size_t>(c - 1)].center;
        double radius = c == 0 ? dom.r0 : dom.holes[static_cast<std::size_t>(c - 1)].radius;
        const PeriodicFunction& g =
            c == 0 ? data.outer : data.holes[static_cast<std::size_t>(c - 1)];
        for (int i = 0; i < nodes_per_circle; ++i) {
            double t = -kPi + kTwoPi * i / nodes_per_circle;
            std::complex<double> e = std::polar(1.0, t);
            Vec2 x = center + radius * Vec2{e.real(), e.imag()};
            fill_row(c * nodes_per_circle + i, x, e, g.value_at(t));
        }
    }

    // per-column max-magnitude scaling; the raw basis spans wild scales
    Eigen::VectorXd scale(cols);
    for (int j = 0; j < cols; ++j) {
        double s = A.col(j).cwiseAbs().maxCoeff();
        scale(j) = s > 0.0 ? s : 1.0;
        A.col(j) /= scale(j);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    const auto& R = qr.matrixR();
    double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < cols; ++j) {
        double v = std::abs(R(j, j));
        rmax = std::max(rmax, v);
        rmin = std::min(rmin, v);
    }
    double cond = rmin > 0.0 ? rmax / rmin : std::numeric_limits<double>::infinity();
    a.cond_estimate = cond * cond;  // normal-equation estimate
    if (a.cond_estimate > 1e13)
        throw std::runtime_error(
            "solve_neumann_holed: collocation system too ill-conditioned; reduce M or widen gaps");

    Eigen::VectorXd beta = qr.solve(rhs);
    for (int j = 0; j < cols; ++j) beta(j) /= scale(j);

    for (int m = 1; m <= M; ++m)
        a.interior[static_cast<std::size_t>(m - 1)] = {beta(2 * (m - 1)), beta(2 * (m - 1) + 1)};
    for (int k = 0; k < dom.n(); ++k) {
        int base = 2 * M * (k + 1);
        for (int m = 1; m <= M; ++m)
            a.holes[static_cast<std::size_t>(k)].coeffs[static_cast<std::size_t>(m - 1)] = {
                beta(base + 2 * (m - 1)), beta(base + 2 * (m - 1) + 1)};
    }

    // honest residual: re-evaluate the assembled ansatz at the nodes
    double worst = 0.0;
    for (int c = 0; c < ncircles; ++c) {
        Vec2 center = c == 0 ? dom.z0 : dom.holes[static_cast<std::size_t>(c - 1)].center;
        double radius = c == 0 ? dom.r0 : dom.holes[static_cast<std::size_t>(c - 1)].radius;
        const PeriodicFunction& g =
            c == 0 ? data.outer : data.holes[static_cast<std::size_t>(c - 1)];
        for (int i = 0; i < nodes_per_circle; ++i) {
            double t = -kPi + kTwoPi * i / nodes_per_circle;
            Vec2 nu{std::cos(t), std::sin(t)};
            Vec2 x = center + radius * nu;
            auto p = ansatz_parts(a, x, 1);
            double dn = p.fp.real() * nu.x - p.fp.imag() * nu.y;
            worst = std::max(worst, std::abs(dn - g.value_at(t)));
        }
    }
    a.boundary_residual = worst;

    a.constant = 0.0;
    a.constant = -ansatz_area_average(a, dom, dom.d / 8.0);
    return a;
}

}  // namespace circpot::holed
