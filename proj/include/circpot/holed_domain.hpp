#pragma once

#include <complex>
#include <vector>

#include "circpot/boundary_data.hpp"
#include "circpot/geometry.hpp"

namespace circpot::holed {

struct Circle {
    Vec2 center;
    double radius = 0.0;
};

// E = B(z0, r0) minus the union of closed hole disks, with the separation
// scale d the hypotheses are checked against
struct HoledDomain {
    Vec2 z0;
    double r0 = 1.0;
    std::vector<Circle> holes;
    double d = 0.0;

    int n() const { return static_cast<int>(holes.size()); }
    double area() const;
    // strictly inside E with the given clearance from every boundary circle
    bool contains(Vec2 x, double margin = 0.0) const;
};

struct GeometryReport {
    bool radii_ok = false;       // r_k >= d
    bool containment_ok = false; // B(z_k, r_k + d) inside B(z0, r0)
    bool separation_ok = false;  // pairwise gaps >= 2d
    bool pass = false;
    double d_max = 0.0;          // largest d satisfying all hypotheses
};

GeometryReport validate_geometry(const HoledDomain& dom);

// 1/sqrt(lambda_1) of the five-point Neumann Laplacian on a Cartesian grid
// masked to E; lambda_1 found by inverse iteration with constant deflation.
// grid_h must resolve the gaps: grid_h <= d/4.
double estimate_poincare(const HoledDomain& dom, double grid_h);

struct BConstant {
    double value = 0.0;
    bool degenerate = false;  // n = 0: the constant vanishes by its sqrt(n) factor
};

// B(E) = |E|^{1/2} C_P (d^{-1/2} C_P + d^{1/2}) n^{1/2} r0^{1/2}
BConstant constant_B(const HoledDomain& dom, double poincare);

struct HoleTerm {
    Vec2 center;
    double radius = 0.0;
    double log_strength = 0.0;                  // a_k0, fixed by the hole flux
    std::vector<std::complex<double>> coeffs;   // multipole coefficients, modes 1..M
};

// u(x) = Re sum c_m (x-z0)^m + sum_k [a_k0 log|x-z_k| + Re sum d_km (x-z_k)^-m]
// + constant; harmonic on E by construction
struct HarmonicAnsatz {
    Vec2 z0;
    double r0 = 0.0;
    std::vector<std::complex<double>> interior;  // c_m, modes 1..M
    std::vector<HoleTerm> holes;
    double constant = 0.0;
    int truncation = 0;
    double boundary_residual = 0.0;  // sup over collocation nodes
    double cond_estimate = 0.0;      // normal-equation condition estimate
};

// Least-squares collocation of the ansatz's analytic normal derivative
// against the datum on nodes_per_circle uniform nodes per circle. Boundary
// data are radial derivatives with respect to each circle's own center.
HarmonicAnsatz solve_neumann_holed(const HoledDomain& dom, const NeumannData& data, int M,
                                   int nodes_per_circle);

double ansatz_value(const HarmonicAnsatz& a, Vec2 x);
Vec2 ansatz_gradient(const HarmonicAnsatz& a, Vec2 x);
Mat2 ansatz_hessian(const HarmonicAnsatz& a, Vec2 x);

struct AnsatzEval {
    double value = 0.0;
    Vec2 gradient;
    Mat2 hessian;
};

// order 0 fills value, 1 adds the gradient, 2 adds the Hessian
AnsatzEval eval_ansatz(const HarmonicAnsatz& a, Vec2 x, int order);

// net flux of the ansatz through the circle of the given radius around hole k
double ansatz_flux(const HarmonicAnsatz& a, int hole, double radius, int nodes);

// midpoint quadrature of E masked to a Cartesian grid of step h
struct DomainQuadrature {
    std::vector<Vec2> points;
    double cell_weight = 0.0;  // h^2
};

DomainQuadrature domain_quadrature(const HoledDomain& dom, double h);

// area average of the un-normalized ansatz terms over the masked grid; the
// solver subtracts this to pin the additive constant
double ansatz_area_average(const HarmonicAnsatz& a, const HoledDomain& dom, double h);

}  // namespace circpot::holed
