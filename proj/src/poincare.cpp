#include <cmath>
#include <stdexcept>

#include "circpot/masked_laplacian.hpp"
#include "circpot/parallel.hpp"
#include "circpot/rng.hpp"

namespace circpot::holed {

MaskedGrid build_masked_grid(const HoledDomain& dom, double grid_h) {
    if (!(grid_h > 0.0)) throw std::invalid_argument("masked grid: step must be positive");
    MaskedGrid g;
    g.h = grid_h;
    int half = static_cast<int>(std::ceil(dom.r0 / grid_h));
    int width = 2 * half;
    std::vector<int> index(static_cast<std::size_t>(width) * width, -1);
    auto cell = [&](int ix, int iy) -> int& {
        return index[static_cast<std::size_t>(iy + half) * width + (ix + half)];
    };
    for (int iy = -half; iy < half; ++iy)
        for (int ix = -half; ix < half; ++ix) {
            Vec2 p{dom.z0.x + (ix + 0.5) * grid_h, dom.z0.y + (iy + 0.5) * grid_h};
            if (dom.contains(p)) {
                cell(ix, iy) = static_cast<int>(g.centers.size());
                g.centers.push_back(p);
            }
        }
    g.nbrs.assign(g.centers.size(), {-1, -1, -1, -1});
    for (int iy = -half; iy < half; ++iy)
        for (int ix = -half; ix < half; ++ix) {
            int id = cell(ix, iy);
            if (id < 0) continue;
            auto& nb = g.nbrs[static_cast<std::size_t>(id)];
            if (ix > -half) nb[0] = cell(ix - 1, iy);
            if (ix + 1 < half) nb[1] = cell(ix + 1, iy);
            if (iy > -half) nb[2] = cell(ix, iy - 1);
            if (iy + 1 < half) nb[3] = cell(ix, iy + 1);
        }
    return g;
}

namespace {

double stencil_value(const MaskedGrid& grid, const std::vector<double>& v, std::size_t i) {
    const auto& nb = grid.nbrs[i];
    double acc = 0.0;
    int deg = 0;
    for (int k = 0; k < 4; ++k)
        if (nb[static_cast<std::size_t>(k)] >= 0) {
            acc += v[static_cast<std::size_t>(nb[static_cast<std::size_t>(k)])];
            ++deg;
        }
    return (deg * v[i] - acc) / (grid.h * grid.h);
}

}  // namespace

void laplacian_apply(const MaskedGrid& grid, const std::vector<double>& v,
                     std::vector<double>& out) {
    out.resize(v.size());
    par::parallel_for(grid.size(), [&](std::size_t i) { out[i] = stencil_value(grid, v, i); });
}

void laplacian_apply_serial(const MaskedGrid& grid, const std::vector<double>& v,
                            std::vector<double>& out) {
    out.resize(v.size());
    par::serial_for(grid.size(), [&](std::size_t i) { out[i] = stencil_value(grid, v, i); });
}

bool grid_connected(const MaskedGrid& grid) {
    if (grid.centers.empty()) return false;
    std::vector<char> seen(grid.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        for (int nb : grid.nbrs[static_cast<std::size_t>(c)])
            if (nb >= 0 && !seen[static_cast<std::size_t>(nb)]) {
                seen[static_cast<std::size_t>(nb)] = 1;
                ++visited;
                stack.push_back(nb);
            }
    }
    return visited == grid.size();
}

namespace {

double dot_serial(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

void deflate_mean(std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    for (double& x : v) x -= m;
}

// CG for A w = b with zero-mean b; the iterates stay (numerically almost)
// zero-mean, and the result is deflated at the end
std::vector<double> cg_solve(const MaskedGrid& grid, const std::vector<double>& b) {
    const std::size_t n = b.size();
    std::vector<double> x(n, 0.0), r = b, p = b, ap(n);
    double rr = dot_serial(r, r);
    const double stop = 1e-20 * rr;
    const int maxit = 60000;
    for (int it = 0; it < maxit && rr > stop; ++it) {
        laplacian_apply(grid, p, ap);
        double pap = dot_serial(p, ap);
        if (pap <= 0.0) break;
        double alpha = rr / pap;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        double rr_new = dot_serial(r, r);
        double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    if (rr > 1e-12 * dot_serial(b, b) + 1e-300)
        throw std::runtime_error("estimate_poincare: inner CG solve stalled");
    deflate_mean(x);
    return x;
}

}  // namespace

double estimate_poincare(const HoledDomain& dom, double grid_h) {
    if (!(dom.d > 0.0)) throw std::invalid_argument("estimate_poincare: domain carries no d");
    if (grid_h > dom.d / 4.0)
        throw std::invalid_argument("estimate_poincare: grid_h must be <= d/4");
    MaskedGrid grid = build_masked_grid(dom, grid_h);
    if (grid.centers.size() < 16)
        throw std::runtime_error("estimate_poincare: masked grid too small");
    if (!grid_connected(grid)) throw std::runtime_error("estimate_poincare: masked grid disconnected");

    const std::size_t n = grid.size();
    Rng rng(20240917u);
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    deflate_mean(v);
    double nv = std::sqrt(dot_serial(v, v));
    for (double& x : v) x /= nv;

    double lambda = 0.0;
    std::vector<double> av(n);
    for (int it = 0; it < 80; ++it) {
        std::vector<double> w = cg_solve(grid, v);
        double nw = std::sqrt(dot_serial(w, w));
        for (double& x : w) x /= nw;
        laplacian_apply(grid, w, av);
        double lam = dot_serial(w, av);
        v = std::move(w);
        if (it > 0 && std::abs(lam - lambda) <= 1e-9 * std::abs(lam)) {
            lambda = lam;
            break;
        }
        lambda = lam;
    }
    if (!(lambda > 0.0)) throw std::runtime_error("estimate_poincare: eigenvalue iteration failed");
    return 1.0 / std::sqrt(lambda);
}

}  // namespace circpot::holed
