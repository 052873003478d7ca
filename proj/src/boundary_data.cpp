#include "circpot/boundary_data.hpp"

#include <cmath>
#include <stdexcept>

#include "circpot/geometry.hpp"
#include "circpot/parallel.hpp"

namespace circpot {

namespace {

void require_even_size(std::size_t n) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("PeriodicFunction: sample count must be even and >= 4");
}

}  // namespace

double PeriodicFunction::angle(int j) const {
    return -kPi + kTwoPi * j / size();
}

PeriodicFunction PeriodicFunction::from_samples(std::vector<double> samples) {
    require_even_size(samples.size());
    PeriodicFunction f;
    f.samples_ = std::move(samples);
    f.compute_coeffs();
    return f;
}

PeriodicFunction PeriodicFunction::from_trig_poly(const std::vector<double>& cos_coeffs,
                                                  const std::vector<double>& sin_coeffs,
                                                  int n_samples) {
    require_even_size(static_cast<std::size_t>(n_samples));
    int degree = static_cast<int>(std::max(cos_coeffs.size(), sin_coeffs.size() + 1)) - 1;
    if (degree < 0) degree = 0;
    if (n_samples < 2 * degree + 2)
        throw std::invalid_argument("from_trig_poly: sample count too small for degree");

    PeriodicFunction f;
    f.coeffs_.assign(static_cast<std::size_t>(n_samples / 2 + 1), {0.0, 0.0});
    if (!cos_coeffs.empty()) f.coeffs_[0] = {cos_coeffs[0], 0.0};
    for (std::size_t k = 1; k < cos_coeffs.size(); ++k)
        f.coeffs_[k] += std::complex<double>(0.5 * cos_coeffs[k], 0.0);
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k)
        f.coeffs_[k + 1] += std::complex<double>(0.0, -0.5 * sin_coeffs[k]);
    f.compute_samples_from_coeffs();
    return f;
}

void PeriodicFunction::compute_coeffs() {
    const int n = size();
    const int half = n / 2;
    coeffs_.assign(static_cast<std::size_t>(half + 1), {0.0, 0.0});
    // twiddle table: e^{-i m tau_j} = (-1)^m * tw[(m j) mod n]
    std::vector<std::complex<double>> tw(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) tw[static_cast<std::size_t>(k)] = std::polar(1.0, -kTwoPi * k / n);
    for (int m = 0; m <= half; ++m) {
        std::complex<double> acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            std::size_t idx = (static_cast<std::size_t>(m) * static_cast<std::size_t>(j)) %
                              static_cast<std::size_t>(n);
            acc += samples_[static_cast<std::size_t>(j)] * tw[idx];
        }
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        coeffs_[static_cast<std::size_t>(m)] = sign * acc / static_cast<double>(n);
    }
    // real input: enforce the symmetry the transform guarantees analytically
    coeffs_[0] = {coeffs_[0].real(), 0.0};
    coeffs_[static_cast<std::size_t>(half)] = {coeffs_[static_cast<std::size_t>(half)].real(), 0.0};
}

void PeriodicFunction::compute_samples_from_coeffs() {
    const int half = max_mode();
    const int n = 2 * half;
    samples_.assign(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) samples_[static_cast<std::size_t>(j)] = value_at(angle(j));
}

double PeriodicFunction::value_at(double tau) const {
    const int half = max_mode();
    const std::complex<double> rot = std::polar(1.0, tau);
    std::complex<double> e{1.0, 0.0};
    double v = coeffs_[0].real();
    for (int m = 1; m < half; ++m) {
        e *= rot;
        v += 2.0 * (coeffs_[static_cast<std::size_t>(m)] * e).real();
    }
    e *= rot;
    v += (coeffs_[static_cast<std::size_t>(half)] * e).real();
    return v;
}

double PeriodicFunction::max_abs() const {
    double best = 0.0;
    for (double v : samples_) best = std::max(best, std::abs(v));
    return best;
}

PeriodicFunction PeriodicFunction::derivative() const {
    PeriodicFunction d;
    d.coeffs_.assign(coeffs_.size(), {0.0, 0.0});
    const int half = max_mode();
    for (int m = 1; m < half; ++m)
        d.coeffs_[static_cast<std::size_t>(m)] =
            std::complex<double>(0.0, m) * coeffs_[static_cast<std::size_t>(m)];
    d.compute_samples_from_coeffs();
    return d;
}

PeriodicFunction PeriodicFunction::scaled(double factor) const {
    PeriodicFunction s;
    s.samples_ = samples_;
    for (double& v : s.samples_) v *= factor;
    s.coeffs_ = coeffs_;
    for (auto& c : s.coeffs_) c *= factor;
    return s;
}

namespace {

template <class MaxFn>
double holder_circle_impl(const PeriodicFunction& g, double alpha, double radius, MaxFn&& maxer) {
    if (alpha <= 0.0 || alpha > 1.0)
        throw std::invalid_argument("holder_seminorm_circle: alpha must be in (0, 1]");
    if (radius <= 0.0) throw std::invalid_argument("holder_seminorm_circle: radius must be positive");
    const int n = g.size();
    const auto& s = g.samples();
    // chord length depends only on the index offset, so scan offsets
    return maxer(static_cast<std::size_t>(n / 2), [&](std::size_t ko) {
        int k = static_cast<int>(ko) + 1;
        double chord = 2.0 * radius * std::abs(std::sin(kPi * k / n));
        double den = std::pow(chord, alpha);
        double md = 0.0;
        for (int i = 0; i < n; ++i) {
            int j = i + k;
            if (j >= n) j -= n;
            md = std::max(md, std::abs(s[static_cast<std::size_t>(i)] -
                                       s[static_cast<std::size_t>(j)]));
        }
        return md / den;
    });
}

}  // namespace

double holder_seminorm_circle(const PeriodicFunction& g, double alpha, double radius) {
    return holder_circle_impl(g, alpha, radius,
                              [](std::size_t n, auto&& f) { return par::parallel_max(n, f); });
}

double holder_seminorm_circle_serial(const PeriodicFunction& g, double alpha, double radius) {
    return holder_circle_impl(g, alpha, radius,
                              [](std::size_t n, auto&& f) { return par::serial_max(n, f); });
}

double compatibility_residual(const NeumannData& data, double r0,
                              const std::vector<double>& hole_radii) {
    if (hole_radii.size() != data.holes.size())
        throw std::invalid_argument("compatibility_residual: radius count mismatch");
    double flux = r0 * kTwoPi * data.outer.mean();
    for (std::size_t k = 0; k < data.holes.size(); ++k)
        flux -= hole_radii[k] * kTwoPi * data.holes[k].mean();
    return flux;
}

}  // namespace circpot
