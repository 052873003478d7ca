#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "circpot/boundary_data.hpp"
#include "circpot/disk_solvers.hpp"
#include "circpot/geometry.hpp"
#include "circpot/holed_domain.hpp"
#include "circpot/rng.hpp"

namespace circpot::metrics {

// value/derivative closures of one harmonic field; adapters below bind the
// disk and ansatz evaluators. Caller keeps the wrapped object alive.
struct FieldEvaluator {
    std::function<double(Vec2)> value;
    std::function<Vec2(Vec2)> gradient;
    std::function<Mat2(Vec2)> hessian;
};

FieldEvaluator make_evaluator(const holed::HarmonicAnsatz& a);
FieldEvaluator make_evaluator(const disk::DiskField& f);

// one field measured on a point set; arrays are filled up to max_order
struct SampledField {
    std::vector<Vec2> points;
    std::vector<double> values;
    std::vector<Vec2> gradients;
    std::vector<Mat2> hessians;
    std::string region;
};

// polar grid of radial/angular midpoints on the annulus r_in < |x-c| < r_out
std::vector<Vec2> polar_collar_points(Vec2 center, double r_in, double r_out, int nr, int nt);

// collars of width d/3 along every boundary circle plus a masked Cartesian
// interior grid; the sampling set used for all sup and Holder norms on E
std::vector<Vec2> domain_sample_points(const holed::HoledDomain& dom, int collar_nr,
                                       int collar_nt, double interior_step);

SampledField sample_field(const FieldEvaluator& f, const std::vector<Vec2>& pts,
                          std::string region, int max_order);

// max over samples of |f| / |Df| / Frobenius norm of D^2 f
double sup_norm(const SampledField& f, int derivative_order);

// grid Hoelder seminorm: all pairs up to 2048 samples, else all near pairs
// within 4 median nearest-neighbor spacings plus 2048^2 seeded random far
// pairs
double holder_seminorm_region(const SampledField& f, double alpha, int derivative_order);
double holder_seminorm_region_serial(const SampledField& f, double alpha,
                                     int derivative_order);

// closed-form test field on an annulus: polynomial in r times trig polynomial
// in angle, with analytic gradient
struct TraceField {
    // coefficient [j][m]: r^j cos(m theta) for ca, r^j sin(m theta) for cb
    std::vector<std::vector<double>> ca;
    std::vector<std::vector<double>> cb;

    double value_polar(double r, double theta) const;
    double dr(double r, double theta) const;
    double dtheta(double r, double theta) const;
    double value(Vec2 x) const;
    Vec2 gradient(Vec2 x) const;
    int radial_degree() const { return static_cast<int>(ca.size()) - 1; }
    int angular_degree() const;
};

TraceField random_trace_field(Rng& rng, int max_radial, int max_angular);

// both sides of the trace inequality on the annulus (rho1, rho2); lhs is the
// boundary integral of phi^2 over |x| = rho_eval, rhs the 8/(rho2-rho1) and
// 4(rho2-rho1) volume terms. Contract: lhs <= rhs.
std::pair<double, double> check_trace_inequality(double rho1, double rho2,
                                                 const TraceField& phi, double rho_eval);

// ||u||_L1(E) / (B ||g||_inf) over the masked d/8 grid; 0 when the datum
// vanishes
double check_l1_bound(const holed::HoledDomain& dom, const NeumannData& data,
                      const holed::HarmonicAnsatz& a, double B);

// max over probes of ||D^beta v||_sup(B(x,d/2)) d^(2+|beta|) / ||v||_L1(B(x,d))
double check_interior_estimate(const FieldEvaluator& v, const holed::HoledDomain& dom,
                               const std::vector<Vec2>& probes, double d, int beta_order);

// Gauss-Legendre nodes/weights on [-1, 1]
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace circpot::metrics
