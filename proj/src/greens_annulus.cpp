#include "circpot/greens_annulus.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace circpot::greens {

namespace {

void require_nonzero(const Vec2& v, const char* what) {
    if (v.norm2() == 0.0) throw std::domain_error(std::string("greens: zero vector in ") + what);
}

void require_ctx(const GreensContext& ctx) {
    if (!(ctx.R > 0.0)) throw std::invalid_argument("greens: R must be positive");
}

}  // namespace

Vec2 invert(const GreensContext& ctx, Vec2 x) {
    require_ctx(ctx);
    require_nonzero(x, "invert");
    return (ctx.R * ctx.R / x.norm2()) * x;
}

double eval_phi_fund(Vec2 x) {
    require_nonzero(x, "phi_fund");
    return -0.25 * std::log(x.norm2()) / kPi;
}

Vec2 grad_phi_fund(Vec2 x) {
    require_nonzero(x, "grad_phi_fund");
    return (-1.0 / (kTwoPi * x.norm2())) * x;
}

double eval_phi_corrector(const GreensContext& ctx, Vec2 x, Vec2 y) {
    Vec2 xs = invert(ctx, x);
    Vec2 dy = y - xs;
    require_nonzero(dy, "phi_corrector (y = x*)");
    return 0.25 * std::log(dy.norm2()) / kPi - y.norm2() / (4.0 * kPi * ctx.R * ctx.R);
}

Vec2 corrector_grad_y(const GreensContext& ctx, Vec2 x, Vec2 y) {
    Vec2 xs = invert(ctx, x);
    Vec2 dy = y - xs;
    require_nonzero(dy, "corrector_grad_y (y = x*)");
    return (1.0 / (kTwoPi * dy.norm2())) * dy - (1.0 / (kTwoPi * ctx.R * ctx.R)) * y;
}

double eval_greens_neumann(const GreensContext& ctx, Vec2 x, Vec2 y) {
    Vec2 d = y - x;
    require_nonzero(d, "greens_neumann (y = x)");
    return eval_phi_fund(d) - eval_phi_corrector(ctx, x, y);
}

Vec2 greens_grad_y(const GreensContext& ctx, Vec2 x, Vec2 y) {
    Vec2 d = y - x;
    require_nonzero(d, "greens_grad_y (y = x)");
    return grad_phi_fund(d) - corrector_grad_y(ctx, x, y);
}

Vec2 greens_grad_x(const GreensContext& ctx, Vec2 x, Vec2 y) {
    Vec2 d = y - x;
    require_nonzero(d, "greens_grad_x (y = x)");
    // d/dx Phi(y - x) = (y - x) / (2 pi |y - x|^2)
    Vec2 g = (1.0 / (kTwoPi * d.norm2())) * d;
    // d/dx phi^x(y) through the inversion Jacobian
    // J = (R/|x|)^2 (I - 2 xhat xhat^T), symmetric
    Vec2 xs = invert(ctx, x);
    Vec2 w = xs - y;
    require_nonzero(w, "greens_grad_x (y = x*)");
    Vec2 u = (1.0 / (kTwoPi * w.norm2())) * w;  // grad_{x*} of log|y - x*|/(2 pi)
    double s = ctx.R * ctx.R / x.norm2();
    double xu = dot(x, u) / x.norm2();
    Vec2 ju = s * (u - 2.0 * xu * x);
    return g - ju;
}

double log_reflection_residual(const GreensContext& ctx, Vec2 x, Vec2 y) {
    require_nonzero(x, "log_reflection");
    require_nonzero(y, "log_reflection");
    Vec2 xs = invert(ctx, x);
    Vec2 ys = invert(ctx, y);
    double lhs = std::log((y - xs).norm());
    double rhs = std::log((ys - x).norm()) + std::log(y.norm()) - std::log(x.norm());
    return std::abs(lhs - rhs);
}

double boundary_match_residual(const GreensContext& ctx, Vec2 x, double theta) {
    require_ctx(ctx);
    Vec2 y{ctx.R * std::cos(theta), ctx.R * std::sin(theta)};
    Vec2 nu{std::cos(theta), std::sin(theta)};
    double lhs = dot(corrector_grad_y(ctx, x, y), nu);
    Vec2 d = y - x;
    double rhs = dot(grad_phi_fund(d), nu);
    return std::abs(lhs - rhs);
}

double corrector_laplacian_fd(const GreensContext& ctx, Vec2 x, Vec2 y, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("greens: FD step must be positive");
    double c = eval_phi_corrector(ctx, x, y);
    double s = eval_phi_corrector(ctx, x, {y.x + h, y.y}) +
               eval_phi_corrector(ctx, x, {y.x - h, y.y}) +
               eval_phi_corrector(ctx, x, {y.x, y.y + h}) +
               eval_phi_corrector(ctx, x, {y.x, y.y - h});
    return (s - 4.0 * c) / (h * h);
}

double boundary_layer(const GreensContext& ctx, const PeriodicFunction& g, Vec2 x,
                      LayerSign sign) {
    require_ctx(ctx);
    const int n = g.size();
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        double t = g.angle(j);
        Vec2 y{ctx.R * std::cos(t), ctx.R * std::sin(t)};
        acc += g.sample(j) * eval_greens_neumann(ctx, x, y);
    }
    double v = acc * kTwoPi * ctx.R / n;
    return sign == LayerSign::minus ? -v : v;
}

Vec2 boundary_layer_grad(const GreensContext& ctx, const PeriodicFunction& g, Vec2 x,
                         LayerSign sign) {
    require_ctx(ctx);
    const int n = g.size();
    Vec2 acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
        double t = g.angle(j);
        Vec2 y{ctx.R * std::cos(t), ctx.R * std::sin(t)};
        acc += g.sample(j) * greens_grad_x(ctx, x, y);
    }
    Vec2 v = (kTwoPi * ctx.R / n) * acc;
    return sign == LayerSign::minus ? Vec2{-v.x, -v.y} : v;
}

namespace {

// 9th-order smoothstep, C^4 at both ends
double s9(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return ((((70.0 * t - 315.0) * t + 540.0) * t - 420.0) * t + 126.0) * t * t * t * t * t;
}

double s9p(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return ((((630.0 * t - 2520.0) * t + 3780.0) * t - 2520.0) * t + 630.0) * t * t * t * t;
}

double s9pp(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return ((((5040.0 * t - 17640.0) * t + 22680.0) * t - 12600.0) * t + 2520.0) * t * t * t;
}

struct Cutoff {
    double a, b;
    double value(double rho) const { return 1.0 - s9((rho - a) / (b - a)); }
    double deriv(double rho) const { return -s9p((rho - a) / (b - a)) / (b - a); }
    double deriv2(double rho) const { return -s9pp((rho - a) / (b - a)) / ((b - a) * (b - a)); }
};

}  // namespace

ReconstructionResult reconstruction_check(const GreensContext& ctx, double d) {
    require_ctx(ctx);
    if (!(d > 0.0)) throw std::invalid_argument("greens: collar width must be positive");
    const double R = ctx.R;
    const Cutoff zeta{R + d / 3.0, R + 2.0 * d / 3.0};

    // harmonic test field with a nonzero area integral so the recovered
    // constant is exercised
    const double c0 = 0.7;
    auto v = [&](Vec2 p) { return p.x * p.x - p.y * p.y + c0; };
    auto vgrad = [](Vec2 p) { return Vec2{2.0 * p.x, -2.0 * p.y}; };

    auto lap_u = [&](Vec2 p) {
        double rho = p.norm();
        if (rho <= zeta.a || rho >= zeta.b) return 0.0;
        double zp = zeta.deriv(rho);
        double zpp = zeta.deriv2(rho);
        double lz = zpp + zp / rho;
        Vec2 gz = (zp / rho) * p;
        return v(p) * lz + 2.0 * dot(gz, vgrad(p));
    };

    constexpr int nq = 512;
    constexpr int nr = 256;
    constexpr int nth = 512;

    auto recover = [&](Vec2 xp) {
        double bsum = 0.0;
        for (int i = 0; i < nq; ++i) {
            double t = -kPi + kTwoPi * (i + 0.5) / nq;
            Vec2 y{R * std::cos(t), R * std::sin(t)};
            double dvdnu = dot(vgrad(y), y) / R;
            bsum += dvdnu * eval_greens_neumann(ctx, xp, y);
        }
        double bterm = bsum * kTwoPi * R / nq;
        double vsum = 0.0;
        for (int k = 0; k < nr; ++k) {
            double rr = R + d * (k + 0.5) / nr;
            if (rr <= zeta.a || rr >= zeta.b) continue;
            for (int i = 0; i < nth; ++i) {
                double t = -kPi + kTwoPi * (i + 0.5) / nth;
                Vec2 y{rr * std::cos(t), rr * std::sin(t)};
                double lu = lap_u(y);
                if (lu != 0.0) vsum += lu * eval_greens_neumann(ctx, xp, y) * rr;
            }
        }
        double vterm = vsum * (d / nr) * (kTwoPi / nth);
        return -bterm - vterm;
    };

    const std::array<double, 3> fracs{0.06, 0.12, 0.2};
    const std::array<double, 4> angles{0.3, 1.2, 2.5, 4.0};
    double lo = 0.0, hi = 0.0, mean = 0.0;
    bool first = true;
    int count = 0;
    for (double f : fracs) {
        for (double ang : angles) {
            Vec2 xp{(R + f * d) * std::cos(ang), (R + f * d) * std::sin(ang)};
            double dev = recover(xp) - v(xp);
            if (first) {
                lo = hi = dev;
                first = false;
            } else {
                lo = std::min(lo, dev);
                hi = std::max(hi, dev);
            }
            mean += dev;
            ++count;
        }
    }
    mean /= count;

    // The corrector's area term contributes -1/(pi R^2) to the Laplacian over
    // the collar, so the reconstruction lands at v minus the cutoff-weighted
    // collar average of v.
    double vol = 0.0;
    for (int k = 0; k < nr; ++k) {
        double rr = R + d * (k + 0.5) / nr;
        double zv = zeta.value(rr);
        if (zv == 0.0) continue;
        for (int i = 0; i < nth; ++i) {
            double t = -kPi + kTwoPi * (i + 0.5) / nth;
            vol += zv * v({rr * std::cos(t), rr * std::sin(t)}) * rr * (d / nr) * (kTwoPi / nth);
        }
    }
    double cref = vol / (kPi * R * R);

    return {hi - lo, std::abs(mean + cref)};
}

}  // namespace circpot::greens
