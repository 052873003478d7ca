#pragma once

#include <complex>
#include <vector>

#include "circpot/boundary_data.hpp"
#include "circpot/geometry.hpp"
#include "circpot/kernels.hpp"

namespace circpot::disk {

// Quadrature accuracy on the unit-circle problems decays like dist(r, 1)^-1
// in the number of nodes; outside these windows results are still returned
// but should be flagged by callers.
inline constexpr double kInteriorWindow = 0.99;
inline constexpr double kExteriorWindow = 1.01;

bool radius_accuracy_degraded(double r);

// trapezoid sums (1/N) sum_j P_r(tau_j - phi) g_j and (1/N) sum_j K_r(...) g_j
double poisson_sum(const PeriodicFunction& g, double r, double phi);
double conjugate_sum(const PeriodicFunction& g, double r, double phi);

// harmonic extension of Dirichlet datum g, 0 <= r < 1
double eval_dirichlet(const PeriodicFunction& g, double r, double phi);

// the same Poisson quadrature evaluated outside the circle, r > 1; its
// boundary trace is -g
double eval_exterior_extension(const PeriodicFunction& g, double r, double phi);

// logarithmic layer -(2/N) sum_j log|x - y_j| g_j without normalization
double eval_neumann_raw(const PeriodicFunction& g, Vec2 x);

// area average of the raw layer over the unit disk, removed so the Neumann
// solution has zero mean; 128 x 256 polar midpoint grid, equal-area radial
// cells
double neumann_area_offset(const PeriodicFunction& g);

// zero-mean Neumann solution at x, |x| < 1. Recomputes the area offset on
// every call; prefer DiskField for repeated evaluation.
double eval_neumann(const PeriodicFunction& g, Vec2 x);

// conjugate-kernel integral (2/N) sum_j K_r(tau_j - phi) g_j; solves the
// Neumann problem for the datum g' and has zero area mean
double eval_omega(const PeriodicFunction& g, double r, double phi);

// gradient of the Dirichlet solution via the tangential-derivative relation,
// valid for 0 < r < 1 and for r > 1 (exterior extension)
Vec2 grad_dirichlet(const PeriodicFunction& g, double r, double phi);
Vec2 grad_dirichlet_center(const PeriodicFunction& g);

// independent route: quadrature of the pointwise kernel gradient
Vec2 grad_dirichlet_direct(const PeriodicFunction& g, double r, double phi);

// gradient of the zero-mean Neumann solution, same validity range
Vec2 grad_neumann(const PeriodicFunction& g, double r, double phi);
Vec2 grad_neumann_center(const PeriodicFunction& g);

// max over pts of |Du - rot90(D omega)| / (1 + |Du|) where u, omega share the
// datum g
double rotation_identity_residual(const PeriodicFunction& g,
                                  const std::vector<KernelPoint>& pts);

// (1/N) sum_j (y_j + z)/(y_j - z) g_j with y_j = e^{i tau_j}; equals
// u - i omega off the unit circle
std::complex<double> schwarz_integral(const PeriodicFunction& g, std::complex<double> z);

// Hessians through the holomorphic derivative of the Schwarz integral
Mat2 hessian_dirichlet(const PeriodicFunction& g, double r, double phi);
Mat2 hessian_neumann(const PeriodicFunction& g, double r, double phi);

enum class DiskKind { dirichlet, neumann, omega };
enum class DiskSide { interior, exterior };

// One solved disk problem with cached derived data: tangential derivatives of
// the datum and, for the Neumann kind, the area offset.
class DiskField {
public:
    DiskField(PeriodicFunction g, DiskKind kind, DiskSide side = DiskSide::interior);

    double value(double r, double phi) const;
    Vec2 gradient(double r, double phi) const;
    Mat2 hessian(double r, double phi) const;

    double value(Vec2 x) const;
    Vec2 gradient(Vec2 x) const;
    Mat2 hessian(Vec2 x) const;

    const PeriodicFunction& datum() const { return g_; }
    DiskKind kind() const { return kind_; }
    DiskSide side() const { return side_; }

private:
    PeriodicFunction g_, gp_, gpp_;
    DiskKind kind_;
    DiskSide side_;
    double offset_ = 0.0;

    void check_radius(double r) const;
};

}  // namespace circpot::disk
