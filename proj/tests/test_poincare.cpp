#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "circpot/holed_domain.hpp"
#include "circpot/masked_laplacian.hpp"
#include "circpot/rng.hpp"

using namespace circpot;
using holed::HoledDomain;

namespace {

HoledDomain disk_domain(double r0, double d) {
    HoledDomain dom;
    dom.z0 = {0.0, 0.0};
    dom.r0 = r0;
    dom.d = d;
    return dom;
}

}  // namespace

TEST_CASE("poincare constant of the unit disk") {
    // 1 / mu'_{1,1} with mu'_{1,1} = 1.8411837...
    const double cp = holed::estimate_poincare(disk_domain(1.0, 0.08), 0.02);
    CHECK(cp == doctest::Approx(0.543137).epsilon(0.02));
}

TEST_CASE("poincare constant scales linearly with the radius") {
    const double c1 = holed::estimate_poincare(disk_domain(1.0, 0.16), 0.04);
    const double c2 = holed::estimate_poincare(disk_domain(2.0, 0.32), 0.08);
    CHECK(c2 / c1 == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("a small hole barely moves the constant") {
    HoledDomain dom = disk_domain(1.0, 0.1);
    dom.holes = {{{0.4, 0.0}, 0.1}};
    const double cp = holed::estimate_poincare(dom, 0.025);
    CHECK(std::abs(cp - 0.5431) < 0.06);
}

TEST_CASE("grid step precondition") {
    CHECK_THROWS_AS((void)holed::estimate_poincare(disk_domain(1.0, 0.1), 0.05),
                    std::invalid_argument);
}

TEST_CASE("disconnected mask is rejected") {
    // two overlapping holes slice the disk into separate lobes
    HoledDomain dom = disk_domain(1.0, 0.05);
    dom.holes = {{{0.0, 0.5}, 0.56}, {{0.0, -0.5}, 0.56}};
    CHECK_THROWS_AS((void)holed::estimate_poincare(dom, 0.0125), std::runtime_error);
}

TEST_CASE("masked laplacian: parallel equals serial, and the stencil sums to zero") {
    HoledDomain dom = disk_domain(1.0, 0.2);
    dom.holes = {{{0.3, -0.1}, 0.2}};
    const auto grid = holed::build_masked_grid(dom, 0.05);
    REQUIRE(grid.centers.size() > 100);
    CHECK(holed::grid_connected(grid));

    Rng rng(77);
    std::vector<double> v(grid.centers.size());
    for (double& q : v) q = rng.uniform(-1.0, 1.0);
    std::vector<double> a, b;
    holed::laplacian_apply(grid, v, a);
    holed::laplacian_apply_serial(grid, v, b);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    // Neumann stencil annihilates constants
    std::vector<double> ones(grid.centers.size(), 1.0), out;
    holed::laplacian_apply(grid, ones, out);
    for (double q : out) CHECK(std::abs(q) < 1e-12);
}
