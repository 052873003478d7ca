#pragma once

#include "circpot/geometry.hpp"

namespace circpot {

// Point in polar coordinates at which a boundary kernel is evaluated. phi is
// the angular offset between the field point and the boundary node; any real
// value is accepted and reduced to (-pi, pi].
struct KernelPoint {
    double r = 0.0;
    double phi = 0.0;
};

// squared-distance form (r-1)^2 + 2r(1-cos phi) of the kernel denominator
// r^2 + 1 - 2 r cos phi; algebraically identical, numerically stable near the
// singularity r = 1, phi = 0
double kernel_denominator(double r, double phi);

// guard threshold below which kernel evaluation throws std::domain_error
inline constexpr double kKernelSingularTol = 1e-14;

// P_r(phi) = (1 - r^2) / (r^2 + 1 - 2 r cos phi). Defined for r >= 0, also
// past the unit circle where it is negative.
double eval_poisson(KernelPoint p);

// K_r(phi) = r sin phi / (r^2 + 1 - 2 r cos phi)
double eval_conjugate(KernelPoint p);

// Gradient in Cartesian coordinates, taken with respect to the field point
// x = r e^{i phi}, of P evaluated against the boundary node at angle 0.
Vec2 eval_poisson_grad_xy(KernelPoint p);

// Same gradient against the boundary node at angle tau, obtained by rotating
// the tau = 0 formula.
Vec2 poisson_grad_xy(double r, double phi, double tau);

}  // namespace circpot
