#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "circpot/disk_solvers.hpp"
#include "circpot/holed_domain.hpp"
#include "circpot/regularity_metrics.hpp"
#include "circpot/rng.hpp"

using namespace circpot;
using disk::DiskField;
using disk::DiskKind;
using holed::HoledDomain;

namespace {

HoledDomain plain_disk(double r0, double d) {
    HoledDomain dom;
    dom.z0 = {0.0, 0.0};
    dom.r0 = r0;
    dom.d = d;
    return dom;
}

metrics::SampledField grid_field(int n_side, double (*f)(Vec2)) {
    metrics::SampledField s;
    s.region = "square";
    for (int i = 0; i <= n_side; ++i)
        for (int j = 0; j <= n_side; ++j) {
            const Vec2 p{static_cast<double>(i) / n_side, static_cast<double>(j) / n_side};
            s.points.push_back(p);
            s.values.push_back(f(p));
        }
    return s;
}

}  // namespace

TEST_CASE("sampled norms of a single-mode disk solution") {
    const auto g = PeriodicFunction::from_trig_poly({0, 0, 1}, {}, 256);
    const DiskField f(g, DiskKind::dirichlet);
    const auto ev = metrics::make_evaluator(f);
    const auto pts = metrics::polar_collar_points({0, 0}, 0.6, 0.9, 32, 128);
    const auto s = metrics::sample_field(ev, pts, "collar", 2);

    // u = r^2 cos(2 phi): |Du| = 2r exactly, Frobenius(D2u) = sqrt(8) everywhere
    const double r_max = 0.9 - 0.3 / 64.0;
    CHECK(metrics::sup_norm(s, 1) == doctest::Approx(2 * r_max).epsilon(1e-9));
    CHECK(metrics::sup_norm(s, 2) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-9));
    CHECK(metrics::sup_norm(s, 0) == doctest::Approx(r_max * r_max).epsilon(1e-3));
}

TEST_CASE("region holder seminorm: exact value on a dense grid") {
    // f = x1 on the unit square with alpha = 1/2: sup ratio is 1, at unit-length
    // horizontal pairs
    const auto s = grid_field(32, [](Vec2 p) { return p.x; });
    REQUIRE(s.points.size() <= 2048);  // all-pairs branch
    CHECK(metrics::holder_seminorm_region(s, 0.5, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(metrics::holder_seminorm_region_serial(s, 0.5, 0) ==
          metrics::holder_seminorm_region(s, 0.5, 0));
}

TEST_CASE("region holder seminorm: sampled route tracks brute force") {
    Rng rng(101);
    metrics::SampledField s;
    s.region = "cloud";
    for (int i = 0; i < 3000; ++i) {
        const Vec2 p{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
        s.points.push_back(p);
        s.values.push_back(p.x);
    }
    const double sampled = metrics::holder_seminorm_region(s, 0.5, 0);
    CHECK(sampled == metrics::holder_seminorm_region_serial(s, 0.5, 0));

    double brute = 0.0;
    for (std::size_t i = 0; i < s.points.size(); ++i)
        for (std::size_t j = i + 1; j < s.points.size(); ++j) {
            const double dist = (s.points[i] - s.points[j]).norm();
            brute = std::max(brute, std::abs(s.values[i] - s.values[j]) / std::sqrt(dist));
        }
    CHECK(sampled <= brute * (1 + 1e-12));
    CHECK(sampled >= 0.98 * brute);
}

TEST_CASE("holder seminorm invariances") {
    const auto s = grid_field(20, [](Vec2 p) { return std::sin(3 * p.x) + p.y * p.y; });
    auto neg = s;
    for (double& v : neg.values) v = -v;
    CHECK(metrics::holder_seminorm_region(s, 0.7, 0) ==
          doctest::Approx(metrics::holder_seminorm_region(neg, 0.7, 0)).epsilon(1e-14));

    auto flat = s;
    for (double& v : flat.values) v = 4.2;
    CHECK(metrics::holder_seminorm_region(flat, 0.7, 0) == doctest::Approx(0.0));
}

TEST_CASE("trace inequality closed forms") {
    metrics::TraceField one;
    one.ca = {{1.0}};
    one.cb = {{0.0}};
    auto [lhs1, rhs1] = metrics::check_trace_inequality(1.0, 2.0, one, 1.0);
    CHECK(lhs1 == doctest::Approx(kTwoPi).epsilon(1e-12));
    CHECK(rhs1 == doctest::Approx(24 * kPi).epsilon(1e-12));

    // phi = r cos(theta): lhs = pi rho^3, volume terms in closed form
    metrics::TraceField lin;
    lin.ca = {{0.0, 0.0}, {0.0, 1.0}};
    lin.cb = {{0.0}};
    const double rho1 = 1.0, rho2 = 2.0;
    auto [lhs2, rhs2] = metrics::check_trace_inequality(rho1, rho2, lin, rho2);
    CHECK(lhs2 == doctest::Approx(kPi * rho2 * rho2 * rho2).epsilon(1e-12));
    const double vol_sq = kPi * (std::pow(rho2, 4.0) - 1.0) / 4.0;
    const double vol_grad = kPi * (rho2 * rho2 - 1.0);
    CHECK(rhs2 == doctest::Approx(8.0 * vol_sq + 4.0 * vol_grad).epsilon(1e-12));
    CHECK(lhs2 <= rhs2);
}

TEST_CASE("trace inequality holds across random fields") {
    Rng rng(55);
    for (int f = 0; f < 25; ++f) {
        const auto phi = metrics::random_trace_field(rng, 4, 6);
        for (const auto& ab : {std::pair{0.5, 0.8}, std::pair{1.0, 2.0}, std::pair{2.0, 3.0}})
            for (double rho : {ab.first, ab.second}) {
                const auto [lhs, rhs] = metrics::check_trace_inequality(ab.first, ab.second, phi, rho);
                CHECK(lhs <= rhs * (1 + 1e-12));
            }
    }
}

TEST_CASE("trace field gradient is consistent") {
    Rng rng(9);
    const auto phi = metrics::random_trace_field(rng, 3, 4);
    const double h = 1e-6;
    for (const Vec2 x : {Vec2{1.2, 0.4}, Vec2{-0.8, 1.1}}) {
        const Vec2 grad = phi.gradient(x);
        const Vec2 fd{(phi.value({x.x + h, x.y}) - phi.value({x.x - h, x.y})) / (2 * h),
                      (phi.value({x.x, x.y + h}) - phi.value({x.x, x.y - h})) / (2 * h)};
        CHECK((grad - fd).norm() < 1e-7 * (1 + grad.norm()));
    }
}

TEST_CASE("trace inequality validates its configuration") {
    metrics::TraceField one;
    one.ca = {{1.0}};
    one.cb = {{0.0}};
    CHECK_THROWS_AS((void)metrics::check_trace_inequality(1.0, 1.0, one, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)metrics::check_trace_inequality(2.0, 1.0, one, 1.0),
                    std::invalid_argument);
}

TEST_CASE("interior estimate oracles") {
    const HoledDomain dom = plain_disk(1.0, 0.4);
    metrics::FieldEvaluator constant;
    constant.value = [](Vec2) { return 1.0; };
    constant.gradient = [](Vec2) { return Vec2{0.0, 0.0}; };
    constant.hessian = [](Vec2) { return Mat2{0.0, 0.0, 0.0}; };
    const std::vector<Vec2> probes{{0.0, 0.0}, {0.2, 0.1}};
    // sup(|v|) d^2 / ||v||_L1(B(d)) = d^2 / (pi d^2) = 1/pi
    CHECK(metrics::check_interior_estimate(constant, dom, probes, 0.4, 0) ==
          doctest::Approx(1.0 / kPi).epsilon(1e-9));

    metrics::FieldEvaluator linear;
    linear.value = [](Vec2 p) { return p.x; };
    linear.gradient = [](Vec2) { return Vec2{1.0, 0.0}; };
    linear.hessian = [](Vec2) { return Mat2{0.0, 0.0, 0.0}; };
    // sup(|Dv|) d^3 / integral of |x1| over B(0, d) = d^3 / ((4/3) d^3) = 3/4
    CHECK(metrics::check_interior_estimate(linear, dom, {{0.0, 0.0}}, 0.3, 1) ==
          doctest::Approx(0.75).epsilon(0.01));

    // probe whose ball leaves the domain
    CHECK_THROWS_AS(
        (void)metrics::check_interior_estimate(constant, dom, {{0.9, 0.0}}, 0.4, 0),
        std::domain_error);
}

TEST_CASE("l1 ratio for the concentric annulus closed form") {
    HoledDomain dom;
    dom.z0 = {0.0, 0.0};
    dom.r0 = 2.0;
    dom.holes = {{{0.0, 0.0}, 1.0}};
    dom.d = 0.5;
    NeumannData data;
    data.outer = PeriodicFunction::from_trig_poly({0.0, 1.0}, {}, 128);
    data.holes.push_back(PeriodicFunction::from_trig_poly({0.0}, {}, 128));
    const auto a = holed::solve_neumann_holed(dom, data, 8, 64);

    // u = (4/3)(r + 1/r) cos(theta): ||u||_L1 = (4/3) * 4 * int_1^2 (r^2+1) dr = 160/9
    const double ratio = metrics::check_l1_bound(dom, data, a, 1.0);
    CHECK(ratio == doctest::Approx(160.0 / 9.0).epsilon(0.02));

    // same masked quadrature applied to the closed form isolates the normalization
    const auto q = holed::domain_quadrature(dom, dom.d / 8.0);
    double ref = 0.0;
    for (const Vec2& p : q.points) {
        const double r = p.norm();
        ref += std::abs((4.0 / 3.0) * (r + 1.0 / r) * p.x / r);
    }
    ref *= q.cell_weight;
    CHECK(ratio == doctest::Approx(ref).epsilon(1e-6));

    // doubling the datum doubles the solution, and B g_sup doubles too
    NeumannData data2;
    data2.outer = PeriodicFunction::from_trig_poly({0.0, 2.0}, {}, 128);
    data2.holes.push_back(PeriodicFunction::from_trig_poly({0.0}, {}, 128));
    const auto a2 = holed::solve_neumann_holed(dom, data2, 8, 64);
    const double ratio2 = metrics::check_l1_bound(dom, data2, a2, 1.0);
    CHECK(ratio2 == doctest::Approx(ratio).epsilon(1e-6));

    NeumannData zero;
    zero.outer = PeriodicFunction::from_trig_poly({0.0}, {}, 64);
    zero.holes.push_back(PeriodicFunction::from_trig_poly({0.0}, {}, 64));
    const auto az = holed::solve_neumann_holed(dom, zero, 8, 64);
    CHECK(metrics::check_l1_bound(dom, zero, az, 1.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS((void)metrics::check_l1_bound(dom, data, a, 0.0), std::invalid_argument);
}

TEST_CASE("domain sampling stays inside and covers collars") {
    HoledDomain dom;
    dom.z0 = {0.0, 0.0};
    dom.r0 = 1.0;
    dom.holes = {{{0.3, 0.0}, 0.2}};
    dom.d = 0.2;
    const auto pts = metrics::domain_sample_points(dom, 16, 64, dom.d / 4.0);
    REQUIRE(pts.size() > 1000);
    int outer_collar = 0, hole_collar = 0;
    for (const Vec2& p : pts) {
        CHECK(dom.contains(p));
        if (p.norm() > dom.r0 - dom.d / 3) ++outer_collar;
        if ((p - Vec2{0.3, 0.0}).norm() < 0.2 + dom.d / 3) ++hole_collar;
    }
    CHECK(outer_collar > 500);
    CHECK(hole_collar > 500);
}
