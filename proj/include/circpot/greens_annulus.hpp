#pragma once

#include "circpot/boundary_data.hpp"
#include "circpot/geometry.hpp"

namespace circpot::greens {

// reference circle B_R centered at the origin
struct GreensContext {
    double R = 1.0;
};

// circle inversion x* = R^2 x / |x|^2
Vec2 invert(const GreensContext& ctx, Vec2 x);

// fundamental solution Phi(x) = -log|x| / (2 pi) and its gradient
double eval_phi_fund(Vec2 x);
Vec2 grad_phi_fund(Vec2 x);

// image corrector phi^x(y) = log|y - x*|/(2 pi) - |y|^2/(4 pi R^2); the
// intended range is |x| > R so x* stays inside B_R
double eval_phi_corrector(const GreensContext& ctx, Vec2 x, Vec2 y);
Vec2 corrector_grad_y(const GreensContext& ctx, Vec2 x, Vec2 y);

// Neumann Green's function G_N(x, y) = Phi(y - x) - phi^x(y)
double eval_greens_neumann(const GreensContext& ctx, Vec2 x, Vec2 y);
Vec2 greens_grad_y(const GreensContext& ctx, Vec2 x, Vec2 y);
Vec2 greens_grad_x(const GreensContext& ctx, Vec2 x, Vec2 y);

// |log|y-x*| - log|y*-x| - log|y| + log|x||
double log_reflection_residual(const GreensContext& ctx, Vec2 x, Vec2 y);

// | d phi^x/d nu - d Phi(.-x)/d nu | at the boundary point R e^{i theta},
// radial derivatives taken analytically
double boundary_match_residual(const GreensContext& ctx, Vec2 x, double theta);

// five-point discrete Laplacian of y -> phi^x(y); converges to -1/(pi R^2)
double corrector_laplacian_fd(const GreensContext& ctx, Vec2 x, Vec2 y, double h);

// sign convention of the boundary representation term: the interior form
// subtracts the layer, the exterior analogue adds it
enum class LayerSign { minus, plus };

// sign * integral over dB_R of g(theta) G_N(x, y(theta)) dS, trapezoid on the
// datum's grid
double boundary_layer(const GreensContext& ctx, const PeriodicFunction& g, Vec2 x,
                      LayerSign sign);
Vec2 boundary_layer_grad(const GreensContext& ctx, const PeriodicFunction& g, Vec2 x,
                         LayerSign sign);

struct ReconstructionResult {
    double spread;        // max - min of (recovered - field) across probes
    double constant_gap;  // |mean deviation - k * integral of the cut field|
};

// Representation-formula check: a closed-form harmonic field multiplied by a
// C^4 radial cutoff supported in R + [d/3, 2d/3] is recovered, up to one
// additive constant, from its boundary flux and volume term. 512-node
// boundary trapezoid, 256 x 512 polar midpoint volume grid; probes stay at
// least d/10 from the cutoff shell.
ReconstructionResult reconstruction_check(const GreensContext& ctx, double d);

}  // namespace circpot::greens
