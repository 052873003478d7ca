#include "circpot/disk_solvers.hpp"

#include <cmath>
#include <stdexcept>

namespace circpot::disk {

namespace {

void require_interior(double r) {
    if (r < 0.0 || r >= 1.0)
        throw std::domain_error("disk: point must satisfy 0 <= r < 1");
}

void require_exterior(double r) {
    if (r <= 1.0) throw std::domain_error("disk: exterior evaluation needs r > 1");
}

void require_zero_mean(const PeriodicFunction& g) {
    if (std::abs(g.mean()) > 1e-10 * (1.0 + g.max_abs()))
        throw std::domain_error("disk: Neumann datum must have zero mean");
}

}  // namespace

bool radius_accuracy_degraded(double r) {
    return (r > kInteriorWindow && r < 1.0) || (r > 1.0 && r < kExteriorWindow);
}

double poisson_sum(const PeriodicFunction& g, double r, double phi) {
    const int n = g.size();
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
        acc += eval_poisson({r, g.angle(j) - phi}) * g.sample(j);
    return acc / n;
}

double conjugate_sum(const PeriodicFunction& g, double r, double phi) {
    const int n = g.size();
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
        acc += eval_conjugate({r, g.angle(j) - phi}) * g.sample(j);
    return acc / n;
}

double eval_dirichlet(const PeriodicFunction& g, double r, double phi) {
    require_interior(r);
    return poisson_sum(g, r, phi);
}

double eval_exterior_extension(const PeriodicFunction& g, double r, double phi) {
    require_exterior(r);
    return poisson_sum(g, r, phi);
}

double eval_neumann_raw(const PeriodicFunction& g, Vec2 x) {
    const int n = g.size();
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        double tau = g.angle(j);
        Vec2 d{x.x - std::cos(tau), x.y - std::sin(tau)};
        double d2 = d.norm2();
        if (d2 < kKernelSingularTol)
            throw std::domain_error("disk: evaluation point touches a quadrature node");
        acc += 0.5 * std::log(d2) * g.sample(j);
    }
    return -2.0 * acc / n;
}

double neumann_area_offset(const PeriodicFunction& g) {
    constexpr int nr = 128;
    constexpr int nt = 256;
    double acc = 0.0;
    for (int k = 0; k < nr; ++k) {
        double r = std::sqrt((k + 0.5) / nr);
        for (int i = 0; i < nt; ++i) {
            double theta = -kPi + kTwoPi * (i + 0.5) / nt;
            acc += eval_neumann_raw(g, {r * std::cos(theta), r * std::sin(theta)});
        }
    }
    return acc / (static_cast<double>(nr) * nt);
}

double eval_neumann(const PeriodicFunction& g, Vec2 x) {
    require_interior(x.norm());
    require_zero_mean(g);
    return eval_neumann_raw(g, x) - neumann_area_offset(g);
}

double eval_omega(const PeriodicFunction& g, double r, double phi) {
    require_interior(r);
    return 2.0 * conjugate_sum(g, r, phi);
}

namespace {

void require_off_center_off_circle(double r) {
    if (r <= 0.0) throw std::domain_error("disk: gradient formula needs r > 0");
    if (r == 1.0) throw std::domain_error("disk: gradient undefined on the unit circle");
}

}  // namespace

Vec2 grad_dirichlet(const PeriodicFunction& g, double r, double phi) {
    require_off_center_off_circle(r);
    PeriodicFunction gp = g.derivative();
    // Du = -(1/r)(1/pi K*g') e_r + (1/r)(1/2pi P*g') e_t
    double a = -2.0 * conjugate_sum(gp, r, phi) / r;
    double b = poisson_sum(gp, r, phi) / r;
    Vec2 er{std::cos(phi), std::sin(phi)};
    Vec2 et{-std::sin(phi), std::cos(phi)};
    return a * er + b * et;
}

Vec2 grad_dirichlet_center(const PeriodicFunction& g) {
    const int n = g.size();
    Vec2 acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
        double tau = g.angle(j);
        acc += g.sample(j) * Vec2{std::cos(tau), std::sin(tau)};
    }
    return (2.0 / n) * acc;
}

Vec2 grad_dirichlet_direct(const PeriodicFunction& g, double r, double phi) {
    const int n = g.size();
    Vec2 acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) acc += g.sample(j) * poisson_grad_xy(r, phi, g.angle(j));
    return acc / n;
}

Vec2 grad_neumann(const PeriodicFunction& g, double r, double phi) {
    require_off_center_off_circle(r);
    // Dw = (1/r)(1/2pi P*g) e_r + (1/r)(1/pi K*g) e_t
    double a = poisson_sum(g, r, phi) / r;
    double b = 2.0 * conjugate_sum(g, r, phi) / r;
    Vec2 er{std::cos(phi), std::sin(phi)};
    Vec2 et{-std::sin(phi), std::cos(phi)};
    return a * er + b * et;
}

Vec2 grad_neumann_center(const PeriodicFunction& g) {
    return grad_dirichlet_center(g);
}

double rotation_identity_residual(const PeriodicFunction& g,
                                  const std::vector<KernelPoint>& pts) {
    PeriodicFunction gp = g.derivative();
    double worst = 0.0;
    for (const auto& p : pts) {
        Vec2 du = grad_dirichlet(g, p.r, p.phi);
        Vec2 domega = grad_neumann(gp, p.r, p.phi);
        Vec2 diff = du - rot90(domega);
        worst = std::max(worst, diff.norm() / (1.0 + du.norm()));
    }
    return worst;
}

std::complex<double> schwarz_integral(const PeriodicFunction& g, std::complex<double> z) {
    const int n = g.size();
    std::complex<double> acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
        std::complex<double> y = std::polar(1.0, g.angle(j));
        std::complex<double> den = y - z;
        if (std::norm(den) < kKernelSingularTol)
            throw std::domain_error("disk: Schwarz integral evaluated on a quadrature node");
        acc += (y + z) / den * g.sample(j);
    }
    return acc / static_cast<double>(n);
}

namespace {

// second holomorphic derivative f'' for u = Re S[g]; uses
// S[h]'(z) = -(i/z) S[h'](z)
std::complex<double> dirichlet_fpp(const PeriodicFunction& g, std::complex<double> z) {
    if (std::abs(z) == 0.0) {
        // f(z) = c0 + 2 sum c_m z^m, so f''(0) = 4 c_2
        return g.max_mode() >= 2 ? 4.0 * g.coeff(2) : std::complex<double>{0.0, 0.0};
    }
    PeriodicFunction gp = g.derivative();
    std::complex<double> sp = schwarz_integral(gp, z);
    std::complex<double> spp = schwarz_integral(gp.derivative(), z);
    return (std::complex<double>(0.0, 1.0) * sp - spp) / (z * z);
}

// F' where F = S[g]/z is the holomorphic gradient of the Neumann solution
std::complex<double> neumann_fpp(const PeriodicFunction& g, std::complex<double> z) {
    if (std::abs(z) == 0.0) {
        return g.max_mode() >= 2 ? 2.0 * g.coeff(2) : std::complex<double>{0.0, 0.0};
    }
    std::complex<double> s = schwarz_integral(g, z);
    std::complex<double> sp = schwarz_integral(g.derivative(), z);
    return (std::complex<double>(0.0, -1.0) * sp - s) / (z * z);
}

Mat2 hessian_from_fpp(std::complex<double> fpp) {
    return {fpp.real(), -fpp.imag(), -fpp.real()};
}

}  // namespace

Mat2 hessian_dirichlet(const PeriodicFunction& g, double r, double phi) {
    if (r < 0.0 || r == 1.0) throw std::domain_error("disk: bad radius for Hessian");
    return hessian_from_fpp(dirichlet_fpp(g, std::polar(r, phi)));
}

Mat2 hessian_neumann(const PeriodicFunction& g, double r, double phi) {
    if (r < 0.0 || r == 1.0) throw std::domain_error("disk: bad radius for Hessian");
    require_zero_mean(g);
    return hessian_from_fpp(neumann_fpp(g, std::polar(r, phi)));
}

DiskField::DiskField(PeriodicFunction g, DiskKind kind, DiskSide side)
    : g_(std::move(g)), kind_(kind), side_(side) {
    if (side_ == DiskSide::exterior && kind_ != DiskKind::dirichlet)
        throw std::invalid_argument("DiskField: only the Dirichlet kind extends outside");
    gp_ = g_.derivative();
    gpp_ = gp_.derivative();
    if (kind_ == DiskKind::neumann) {
        require_zero_mean(g_);
        offset_ = neumann_area_offset(g_);
    }
}

void DiskField::check_radius(double r) const {
    if (side_ == DiskSide::interior)
        require_interior(r);
    else
        require_exterior(r);
}

double DiskField::value(double r, double phi) const {
    check_radius(r);
    switch (kind_) {
        case DiskKind::dirichlet:
            return poisson_sum(g_, r, phi);
        case DiskKind::neumann:
            return eval_neumann_raw(g_, {r * std::cos(phi), r * std::sin(phi)}) - offset_;
        case DiskKind::omega:
            return 2.0 * conjugate_sum(g_, r, phi);
    }
    return 0.0;
}

Vec2 DiskField::gradient(double r, double phi) const {
    check_radius(r);
    if (r == 0.0) {
        switch (kind_) {
            case DiskKind::dirichlet:
                return grad_dirichlet_center(g_);
            case DiskKind::neumann:
                return grad_neumann_center(g_);
            case DiskKind::omega:
                return grad_neumann_center(gp_);
        }
    }
    switch (kind_) {
        case DiskKind::dirichlet: {
            double a = -2.0 * conjugate_sum(gp_, r, phi) / r;
            double b = poisson_sum(gp_, r, phi) / r;
            Vec2 er{std::cos(phi), std::sin(phi)};
            Vec2 et{-std::sin(phi), std::cos(phi)};
            return a * er + b * et;
        }
        case DiskKind::neumann:
            return grad_neumann(g_, r, phi);
        case DiskKind::omega:
            return grad_neumann(gp_, r, phi);
    }
    return {0.0, 0.0};
}

Mat2 DiskField::hessian(double r, double phi) const {
    check_radius(r);
    std::complex<double> z = std::polar(r, phi);
    switch (kind_) {
        case DiskKind::dirichlet:
            return hessian_from_fpp(dirichlet_fpp(g_, z));
        case DiskKind::neumann:
            return hessian_from_fpp(neumann_fpp(g_, z));
        case DiskKind::omega: {
            // omega = Re(i f) with f the Dirichlet potential of the datum
            std::complex<double> fpp = dirichlet_fpp(g_, z);
            return hessian_from_fpp(std::complex<double>(0.0, 1.0) * fpp);
        }
    }
    return {};
}

double DiskField::value(Vec2 x) const { return value(x.norm(), std::atan2(x.y, x.x)); }
Vec2 DiskField::gradient(Vec2 x) const { return gradient(x.norm(), std::atan2(x.y, x.x)); }
Mat2 DiskField::hessian(Vec2 x) const { return hessian(x.norm(), std::atan2(x.y, x.x)); }

}  // namespace circpot::disk
