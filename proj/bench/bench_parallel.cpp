// Serial reference vs OpenMP implementations of the pairwise scans and the
// masked Laplacian. Run with OMP_NUM_THREADS set to see the parallel speedup.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "circpot/boundary_data.hpp"
#include "circpot/holed_domain.hpp"
#include "circpot/masked_laplacian.hpp"
#include "circpot/regularity_metrics.hpp"
#include "circpot/rng.hpp"

using namespace circpot;

namespace {

PeriodicFunction make_datum(int n) {
    std::vector<double> s(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double tau = -kPi + kTwoPi * j / n;
        s[static_cast<std::size_t>(j)] = std::exp(std::sin(tau)) + 0.3 * std::cos(5 * tau);
    }
    return PeriodicFunction::from_samples(s);
}

metrics::SampledField make_cloud(int n) {
    Rng rng(4242);
    metrics::SampledField f;
    f.region = "bench";
    for (int i = 0; i < n; ++i) {
        const Vec2 p{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        f.points.push_back(p);
        f.values.push_back(std::sin(3 * p.x) * std::exp(p.y));
    }
    return f;
}

holed::MaskedGrid make_grid() {
    holed::HoledDomain dom;
    dom.z0 = {0.0, 0.0};
    dom.r0 = 1.0;
    dom.holes = {{{0.35, 0.0}, 0.15}, {{-0.35, 0.0}, 0.15}};
    dom.d = 0.15;
    return holed::build_masked_grid(dom, 0.01);
}

void bm_holder_circle_serial(benchmark::State& state) {
    const auto g = make_datum(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(holder_seminorm_circle_serial(g, 0.5, 1.0));
}

void bm_holder_circle_parallel(benchmark::State& state) {
    const auto g = make_datum(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(holder_seminorm_circle(g, 0.5, 1.0));
}

void bm_holder_region_serial(benchmark::State& state) {
    const auto f = make_cloud(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(metrics::holder_seminorm_region_serial(f, 0.5, 0));
}

void bm_holder_region_parallel(benchmark::State& state) {
    const auto f = make_cloud(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(metrics::holder_seminorm_region(f, 0.5, 0));
}

void bm_laplacian_serial(benchmark::State& state) {
    const auto grid = make_grid();
    std::vector<double> v(grid.centers.size()), out(grid.centers.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.1 * static_cast<double>(i));
    for (auto _ : state) {
        holed::laplacian_apply_serial(grid, v, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void bm_laplacian_parallel(benchmark::State& state) {
    const auto grid = make_grid();
    std::vector<double> v(grid.centers.size()), out(grid.centers.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.1 * static_cast<double>(i));
    for (auto _ : state) {
        holed::laplacian_apply(grid, v, out);
        benchmark::DoNotOptimize(out.data());
    }
}

}  // namespace

BENCHMARK(bm_holder_circle_serial)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_holder_circle_parallel)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_holder_region_serial)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_holder_region_parallel)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_laplacian_serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_laplacian_parallel)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
