#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace circpot {

// Real 2pi-periodic function held as uniform samples plus the matching
// trigonometric interpolant. Samples live at tau_j = -pi + 2 pi j / N; the
// half spectrum c_m, m = 0..N/2, determines values between nodes. Both
// representations are kept consistent by construction.
class PeriodicFunction {
public:
    PeriodicFunction() = default;

    static PeriodicFunction from_samples(std::vector<double> samples);

    // sum_k cos_coeffs[k] cos(k tau) + sum_k sin_coeffs[k] sin((k+1) tau),
    // sampled on n_samples nodes. n_samples must be even and exceed twice the
    // polynomial degree by at least two so the spectrum is alias free.
    static PeriodicFunction from_trig_poly(const std::vector<double>& cos_coeffs,
                                           const std::vector<double>& sin_coeffs,
                                           int n_samples);

    int size() const { return static_cast<int>(samples_.size()); }
    const std::vector<double>& samples() const { return samples_; }
    double sample(int j) const { return samples_[static_cast<std::size_t>(j)]; }
    double angle(int j) const;

    // mode m coefficient, 0 <= m <= N/2
    std::complex<double> coeff(int m) const { return coeffs_[static_cast<std::size_t>(m)]; }
    int max_mode() const { return static_cast<int>(coeffs_.size()) - 1; }

    double mean() const { return coeffs_[0].real(); }
    double max_abs() const;

    // trigonometric interpolant at arbitrary angle
    double value_at(double tau) const;

    // spectral d/dtau; the Nyquist mode is dropped, which is exact whenever
    // the underlying function is band limited below N/2
    PeriodicFunction derivative() const;

    PeriodicFunction scaled(double factor) const;

private:
    std::vector<double> samples_;
    std::vector<std::complex<double>> coeffs_;

    void compute_coeffs();
    void compute_samples_from_coeffs();
};

// sup over sample pairs of |g(s) - g(t)| / |chord(s,t)|^alpha on the circle of
// the given radius; chord(s,t) = 2 radius |sin((s-t)/2)|. Grid maximum, so a
// lower bound for the true seminorm.
double holder_seminorm_circle(const PeriodicFunction& g, double alpha, double radius);
double holder_seminorm_circle_serial(const PeriodicFunction& g, double alpha, double radius);

// Neumann datum for a circular domain with holes: one component per boundary
// circle, each sampled on its own angular grid. Values are radial derivatives
// with respect to the owning circle's center.
struct NeumannData {
    PeriodicFunction outer;
    std::vector<PeriodicFunction> holes;
};

// signed defect r0 * integral(outer) - sum_k r_k * integral(hole_k) of the
// flux balance required for solvability
double compatibility_residual(const NeumannData& data, double r0,
                              const std::vector<double>& hole_radii);

}  // namespace circpot
