#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "circpot/boundary_data.hpp"
#include "circpot/geometry.hpp"

using namespace circpot;

TEST_CASE("trig polynomial construction and interpolation") {
    // g = 2 + cos(2 tau) - 0.5 sin(3 tau)
    const auto g = PeriodicFunction::from_trig_poly({2, 0, 1}, {0, 0, -0.5}, 64);
    for (double tau : {0.0, 0.9, -2.3, 3.1}) {
        const double expect = 2 + std::cos(2 * tau) - 0.5 * std::sin(3 * tau);
        CHECK(g.value_at(tau) == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(g.mean() == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(g.coeff(2).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g.coeff(3).imag() == doctest::Approx(0.25).epsilon(1e-12));  // -0.5 sin -> +i/4
    for (int j = 0; j < g.size(); j += 7)
        CHECK(g.sample(j) == doctest::Approx(g.value_at(g.angle(j))).epsilon(1e-12));
}

TEST_CASE("sample round trip for a smooth non-polynomial function") {
    const int N = 128;
    std::vector<double> s(N);
    for (int j = 0; j < N; ++j) s[j] = std::exp(std::sin(-kPi + kTwoPi * j / N));
    const auto g = PeriodicFunction::from_samples(s);
    for (int j = 0; j < N; ++j) CHECK(g.sample(j) == doctest::Approx(s[j]).epsilon(1e-13));
    // interpolation between nodes is spectrally accurate for this function
    for (double tau : {0.13, -1.7, 2.9})
        CHECK(g.value_at(tau) == doctest::Approx(std::exp(std::sin(tau))).epsilon(1e-12));
}

TEST_CASE("spectral derivative") {
    const auto g = PeriodicFunction::from_trig_poly({0, 0, 1}, {0.3}, 64);
    const auto gp = g.derivative();
    for (double tau : {0.0, 0.7, -2.1}) {
        const double expect = -2 * std::sin(2 * tau) + 0.3 * std::cos(tau);
        CHECK(gp.value_at(tau) == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(gp.mean() == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("from_trig_poly rejects under-resolved grids") {
    CHECK_THROWS_AS(PeriodicFunction::from_trig_poly({0, 0, 0, 0, 1}, {}, 8), std::invalid_argument);
    CHECK_THROWS_AS(PeriodicFunction::from_trig_poly({1}, {}, 7), std::invalid_argument);
}

TEST_CASE("holder seminorm of a single mode on the circle") {
    const auto g = PeriodicFunction::from_trig_poly({0, 1}, {}, 512);
    // alpha = 1: |cos s - cos t| / chord peaks at exactly 1 on the unit circle
    CHECK(holder_seminorm_circle(g, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    // doubling the radius doubles the chord
    CHECK(holder_seminorm_circle(g, 1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
    // alpha = 1/2: supremum is sqrt(2), attained at antipodal pairs
    CHECK(holder_seminorm_circle(g, 0.5, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("holder seminorm grid maximum against a dense reference") {
    const auto g = PeriodicFunction::from_trig_poly({0.2, 1.0, -0.4}, {0.7}, 256);
    const double alpha = 0.6, radius = 1.3;
    const double fast = holder_seminorm_circle(g, alpha, radius);
    CHECK(fast == holder_seminorm_circle_serial(g, alpha, radius));

    // brute force over the same nodes
    double brute = 0.0;
    const int n = g.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double chord = 2 * radius * std::abs(std::sin(kPi * (j - i) / n));
            brute = std::max(brute, std::abs(g.sample(i) - g.sample(j)) / std::pow(chord, alpha));
        }
    CHECK(fast == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("holder seminorm of a constant vanishes") {
    const auto g = PeriodicFunction::from_trig_poly({3.7}, {}, 64);
    CHECK(holder_seminorm_circle(g, 0.5, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("compatibility residual") {
    NeumannData data;
    data.outer = PeriodicFunction::from_trig_poly({0.5, 1.0}, {}, 64);
    data.holes.push_back(PeriodicFunction::from_trig_poly({1.0}, {0.3}, 64));
    // r0 = 2: outer flux 2 * 2pi * 0.5 = 2pi; hole r = 1: flux 2pi
    CHECK(compatibility_residual(data, 2.0, {1.0}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(compatibility_residual(data, 2.0, {0.5}) == doctest::Approx(kPi).epsilon(1e-12));
}
