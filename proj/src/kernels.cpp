#include "circpot/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace circpot {

double kernel_denominator(double r, double phi) {
    double s = std::sin(0.5 * phi);
    return (r - 1.0) * (r - 1.0) + 4.0 * r * s * s;
}

namespace {

double checked_denominator(double r, double phi) {
    if (r < 0.0) throw std::domain_error("kernel: negative radius");
    double q = kernel_denominator(r, phi);
    if (q < kKernelSingularTol)
        throw std::domain_error("kernel: evaluation point too close to the boundary node");
    return q;
}

}  // namespace

double eval_poisson(KernelPoint p) {
    double phi = reduce_angle(p.phi);
    double q = checked_denominator(p.r, phi);
    return (1.0 - p.r * p.r) / q;
}

double eval_conjugate(KernelPoint p) {
    double phi = reduce_angle(p.phi);
    double q = checked_denominator(p.r, phi);
    return p.r * std::sin(phi) / q;
}

Vec2 eval_poisson_grad_xy(KernelPoint p) {
    double phi = reduce_angle(p.phi);
    double q = checked_denominator(p.r, phi);
    double r = p.r;
    double c = std::cos(phi);
    double s = std::sin(phi);
    // d/dtau arguments enter as tau - phi with tau = 0
    double cd = std::cos(-phi);
    double sd = std::sin(-phi);
    double one_m_r2 = 1.0 - r * r;
    double a = 2.0 * r - (r * r + 1.0) * cd;
    double gx = -2.0 * (c * a + s * one_m_r2 * sd) / (q * q);
    double gy = -2.0 * (s * a - c * one_m_r2 * sd) / (q * q);
    return {gx, gy};
}

Vec2 poisson_grad_xy(double r, double phi, double tau) {
    Vec2 g = eval_poisson_grad_xy({r, phi - tau});
    double c = std::cos(tau);
    double s = std::sin(tau);
    return {c * g.x - s * g.y, s * g.x + c * g.y};
}

}  // namespace circpot
