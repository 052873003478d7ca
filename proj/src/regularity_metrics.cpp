#include "circpot/regularity_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "circpot/parallel.hpp"
#include "circpot/rng.hpp"

namespace circpot::metrics {

FieldEvaluator make_evaluator(const holed::HarmonicAnsatz& a) {
    return {[&a](Vec2 x) { return holed::ansatz_value(a, x); },
            [&a](Vec2 x) { return holed::ansatz_gradient(a, x); },
            [&a](Vec2 x) { return holed::ansatz_hessian(a, x); }};
}

FieldEvaluator make_evaluator(const disk::DiskField& f) {
    return {[&f](Vec2 x) { return f.value(x); }, [&f](Vec2 x) { return f.gradient(x); },
            [&f](Vec2 x) { return f.hessian(x); }};
}

std::vector<Vec2> polar_collar_points(Vec2 center, double r_in, double r_out, int nr, int nt) {
    if (!(0.0 <= r_in && r_in < r_out))
        throw std::invalid_argument("polar_collar_points: need 0 <= r_in < r_out");
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(nr) * nt);
    for (int i = 0; i < nr; ++i) {
        double r = r_in + (i + 0.5) * (r_out - r_in) / nr;
        for (int j = 0; j < nt; ++j) {
            double t = -kPi + kTwoPi * (j + 0.5) / nt;
            pts.push_back(center + r * Vec2{std::cos(t), std::sin(t)});
        }
    }
    return pts;
}

std::vector<Vec2> domain_sample_points(const holed::HoledDomain& dom, int collar_nr,
                                       int collar_nt, double interior_step) {
    std::vector<Vec2> pts;
    double w = dom.d / 3.0;
    auto keep = [&](const std::vector<Vec2>& cand) {
        for (const auto& p : cand)
            if (dom.contains(p, 1e-9)) pts.push_back(p);
    };
    keep(polar_collar_points(dom.z0, dom.r0 - w, dom.r0, collar_nr, collar_nt));
    for (const auto& h : dom.holes)
        keep(polar_collar_points(h.center, h.radius, h.radius + w, collar_nr, collar_nt));
    auto q = holed::domain_quadrature(dom, interior_step);
    keep(q.points);
    return pts;
}

SampledField sample_field(const FieldEvaluator& f, const std::vector<Vec2>& pts,
                          std::string region, int max_order) {
    SampledField out;
    out.points = pts;
    out.region = std::move(region);
    const std::size_t n = pts.size();
    out.values.resize(n);
    if (max_order >= 1) out.gradients.resize(n);
    if (max_order >= 2) out.hessians.resize(n);
    par::parallel_for(n, [&](std::size_t i) {
        out.values[i] = f.value(pts[i]);
        if (max_order >= 1) out.gradients[i] = f.gradient(pts[i]);
        if (max_order >= 2) out.hessians[i] = f.hessian(pts[i]);
    });
    return out;
}

namespace {

double frob(const Mat2& m) {
    return std::sqrt(m.xx * m.xx + 2.0 * m.xy * m.xy + m.yy * m.yy);
}

void require_order_data(const SampledField& f, int order) {
    if (f.points.empty()) throw std::invalid_argument("sampled field is empty");
    if (order < 0 || order > 2) throw std::invalid_argument("derivative order must be 0, 1 or 2");
    if (order >= 1 && f.gradients.size() != f.points.size())
        throw std::invalid_argument("sampled field carries no gradients");
    if (order >= 2 && f.hessians.size() != f.points.size())
        throw std::invalid_argument("sampled field carries no hessians");
}

double pair_diff(const SampledField& f, int order, std::size_t i, std::size_t j) {
    switch (order) {
        case 0:
            return std::abs(f.values[i] - f.values[j]);
        case 1:
            return (f.gradients[i] - f.gradients[j]).norm();
        default:
            return frob(f.hessians[i] - f.hessians[j]);
    }
}

// spatial hash over square cells
struct CellHash {
    double cell;
    std::unordered_map<long long, std::vector<int>> buckets;

    static long long key(long long ix, long long iy) { return (ix << 32) ^ (iy & 0xffffffffLL); }

    CellHash(const std::vector<Vec2>& pts, double cell_size) : cell(cell_size) {
        for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
            long long ix = static_cast<long long>(std::floor(pts[static_cast<std::size_t>(i)].x / cell));
            long long iy = static_cast<long long>(std::floor(pts[static_cast<std::size_t>(i)].y / cell));
            buckets[key(ix, iy)].push_back(i);
        }
    }

    template <class F>
    void for_neighbors(Vec2 p, F&& body) const {
        long long ix = static_cast<long long>(std::floor(p.x / cell));
        long long iy = static_cast<long long>(std::floor(p.y / cell));
        for (long long dy = -1; dy <= 1; ++dy)
            for (long long dx = -1; dx <= 1; ++dx) {
                auto it = buckets.find(key(ix + dx, iy + dy));
                if (it == buckets.end()) continue;
                for (int j : it->second) body(j);
            }
    }
};

double median_nn_spacing(const std::vector<Vec2>& pts) {
    // coarse hash sized by a bounding-box heuristic, then exact NN in the
    // 3x3 neighborhood; falls back to global scan for stragglers
    double lo_x = pts[0].x, hi_x = pts[0].x, lo_y = pts[0].y, hi_y = pts[0].y;
    for (const auto& p : pts) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    double span = std::max(hi_x - lo_x, hi_y - lo_y);
    double cell = std::max(span / std::sqrt(static_cast<double>(pts.size())), 1e-12);
    CellHash hash(pts, cell);
    std::vector<double> nn(pts.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        hash.for_neighbors(pts[i], [&](int j) {
            if (static_cast<std::size_t>(j) == i) return;
            nn[i] = std::min(nn[i], (pts[i] - pts[static_cast<std::size_t>(j)]).norm());
        });
        if (!std::isfinite(nn[i])) {
            for (std::size_t j = 0; j < pts.size(); ++j)
                if (j != i) nn[i] = std::min(nn[i], (pts[i] - pts[j]).norm());
        }
    }
    std::vector<double> sorted = nn;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    return sorted[sorted.size() / 2];
}

constexpr std::uint64_t kFarPairSeed = 0x51a7ecc5u;
constexpr std::size_t kAllPairLimit = 2048;

template <class MaxFn>
double holder_region_impl(const SampledField& f, double alpha, int order, MaxFn&& maxer) {
    require_order_data(f, order);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("holder_seminorm_region: alpha must be in (0, 1)");
    if (f.points.size() < 2) throw std::invalid_argument("holder_seminorm_region: need >= 2 points");
    const auto& pts = f.points;
    const std::size_t n = pts.size();

    auto quotient = [&](std::size_t i, std::size_t j) {
        double dist = (pts[i] - pts[j]).norm();
        if (dist <= 0.0) return 0.0;
        return pair_diff(f, order, i, j) / std::pow(dist, alpha);
    };

    if (n <= kAllPairLimit) {
        return maxer(n, [&](std::size_t i) {
            double best = 0.0;
            for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, quotient(i, j));
            return best;
        });
    }

    double radius = 4.0 * median_nn_spacing(pts);
    CellHash hash(pts, radius);
    double near_best = maxer(n, [&](std::size_t i) {
        double best = 0.0;
        hash.for_neighbors(pts[i], [&](int j) {
            if (static_cast<std::size_t>(j) <= i) return;
            if ((pts[i] - pts[static_cast<std::size_t>(j)]).norm() <= radius)
                best = std::max(best, quotient(i, static_cast<std::size_t>(j)));
        });
        return best;
    });

    // 2048^2 seeded far pairs in chunks so the stream is independent of the
    // thread count
    constexpr std::size_t chunks = 1024;
    constexpr std::size_t per_chunk = (kAllPairLimit * kAllPairLimit) / chunks;
    double far_best = maxer(chunks, [&](std::size_t c) {
        Rng rng(kFarPairSeed + c);
        double best = 0.0;
        for (std::size_t t = 0; t < per_chunk; ++t) {
            std::size_t i = rng.index(n);
            std::size_t j = rng.index(n);
            if (i == j) continue;
            best = std::max(best, quotient(i, j));
        }
        return best;
    });
    return std::max(near_best, far_best);
}

}  // namespace

double sup_norm(const SampledField& f, int derivative_order) {
    require_order_data(f, derivative_order);
    return par::parallel_max(f.points.size(), [&](std::size_t i) {
        switch (derivative_order) {
            case 0:
                return std::abs(f.values[i]);
            case 1:
                return f.gradients[i].norm();
            default:
                return frob(f.hessians[i]);
        }
    });
}

double holder_seminorm_region(const SampledField& f, double alpha, int derivative_order) {
    return holder_region_impl(f, alpha, derivative_order,
                              [](std::size_t n, auto&& fn) { return par::parallel_max(n, fn); });
}

double holder_seminorm_region_serial(const SampledField& f, double alpha, int derivative_order) {
    return holder_region_impl(f, alpha, derivative_order,
                              [](std::size_t n, auto&& fn) { return par::serial_max(n, fn); });
}

namespace {

// accumulates sum_j sum_m w(j) r^j (A[j][m] f_m + B[j][m] g_m) where (f_m, g_m)
// walks (cos, sin)(m theta) by the angle-addition recurrence
template <typename RadialWeight, typename ModeTerm>
double trace_accumulate(const std::vector<std::vector<double>>& A,
                        const std::vector<std::vector<double>>& B, double r, double theta,
                        RadialWeight&& w, ModeTerm&& term) {
    const double ct = std::cos(theta), st = std::sin(theta);
    std::size_t modes = 0;
    for (const auto& row : A) modes = std::max(modes, row.size());
    for (const auto& row : B) modes = std::max(modes, row.size());
    double acc = 0.0;
    double cm = 1.0, sm = 0.0;
    for (std::size_t m = 0; m < modes; ++m) {
        double ra = 0.0, rb = 0.0;
        double rj = 1.0;
        for (std::size_t j = 0; j < std::max(A.size(), B.size()); ++j) {
            const double wj = w(j);
            if (wj != 0.0) {
                if (j < A.size() && m < A[j].size()) ra += wj * A[j][m] * rj;
                if (j < B.size() && m < B[j].size()) rb += wj * B[j][m] * rj;
            }
            rj *= r;
        }
        acc += term(m, ra, rb, cm, sm);
        const double cn = cm * ct - sm * st;
        sm = sm * ct + cm * st;
        cm = cn;
    }
    return acc;
}

}  // namespace

double TraceField::value_polar(double r, double theta) const {
    return trace_accumulate(
        ca, cb, r, theta, [](std::size_t) { return 1.0; },
        [](std::size_t, double ra, double rb, double c, double s) { return ra * c + rb * s; });
}

double TraceField::dr(double r, double theta) const {
    // radial weight j picks up the derivative of r^j; the j = 0 row drops out
    double acc = 0.0;
    if (!(ca.size() > 1 || cb.size() > 1)) return acc;
    const double ct = std::cos(theta), st = std::sin(theta);
    std::size_t modes = 0;
    for (const auto& row : ca) modes = std::max(modes, row.size());
    for (const auto& row : cb) modes = std::max(modes, row.size());
    double cm = 1.0, sm = 0.0;
    for (std::size_t m = 0; m < modes; ++m) {
        double ra = 0.0, rb = 0.0;
        double rj = 1.0;  // r^{j-1}
        for (std::size_t j = 1; j < std::max(ca.size(), cb.size()); ++j) {
            if (j < ca.size() && m < ca[j].size()) ra += j * ca[j][m] * rj;
            if (j < cb.size() && m < cb[j].size()) rb += j * cb[j][m] * rj;
            rj *= r;
        }
        acc += ra * cm + rb * sm;
        const double cn = cm * ct - sm * st;
        sm = sm * ct + cm * st;
        cm = cn;
    }
    return acc;
}

double TraceField::dtheta(double r, double theta) const {
    return trace_accumulate(
        ca, cb, r, theta, [](std::size_t) { return 1.0; },
        [](std::size_t m, double ra, double rb, double c, double s) {
            return static_cast<double>(m) * (rb * c - ra * s);
        });
}

double TraceField::value(Vec2 x) const { return value_polar(x.norm(), std::atan2(x.y, x.x)); }

Vec2 TraceField::gradient(Vec2 x) const {
    double r = x.norm();
    double theta = std::atan2(x.y, x.x);
    double fr = dr(r, theta);
    double ft = dtheta(r, theta) / r;
    Vec2 er{std::cos(theta), std::sin(theta)};
    Vec2 et{-std::sin(theta), std::cos(theta)};
    return fr * er + ft * et;
}

int TraceField::angular_degree() const {
    std::size_t deg = 0;
    for (const auto& row : ca) deg = std::max(deg, row.size());
    for (const auto& row : cb) deg = std::max(deg, row.size());
    return deg == 0 ? 0 : static_cast<int>(deg) - 1;
}

TraceField random_trace_field(Rng& rng, int max_radial, int max_angular) {
    TraceField f;
    f.ca.assign(static_cast<std::size_t>(max_radial) + 1,
                std::vector<double>(static_cast<std::size_t>(max_angular) + 1, 0.0));
    f.cb = f.ca;
    for (auto& row : f.ca)
        for (auto& v : row) v = rng.uniform(-1.0, 1.0);
    for (auto& row : f.cb)
        for (auto& v : row) v = rng.uniform(-1.0, 1.0);
    return f;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = x;
        weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

std::pair<double, double> check_trace_inequality(double rho1, double rho2,
                                                 const TraceField& phi, double rho_eval) {
    if (!(0.0 < rho1 && rho1 < rho2))
        throw std::invalid_argument("check_trace_inequality: need 0 < rho1 < rho2");
    if (rho_eval != rho1 && rho_eval != rho2)
        throw std::invalid_argument("check_trace_inequality: rho_eval must be rho1 or rho2");
    constexpr int ngl = 48;
    constexpr int nt = 256;
    if (2 * phi.angular_degree() >= nt / 2)
        throw std::invalid_argument("check_trace_inequality: angular modes exceed node count");
    if (2 * phi.radial_degree() + 2 > 2 * ngl - 1)
        throw std::invalid_argument("check_trace_inequality: radial degree exceeds node count");

    double lhs = 0.0;
    for (int j = 0; j < nt; ++j) {
        double t = -kPi + kTwoPi * j / nt;
        double v = phi.value_polar(rho_eval, t);
        lhs += v * v;
    }
    lhs *= rho_eval * kTwoPi / nt;

    std::vector<double> gx, gw;
    gauss_legendre(ngl, gx, gw);
    double vol_sq = 0.0, vol_grad = 0.0;
    for (int i = 0; i < ngl; ++i) {
        double r = 0.5 * (rho1 + rho2) + 0.5 * (rho2 - rho1) * gx[static_cast<std::size_t>(i)];
        double wr = 0.5 * (rho2 - rho1) * gw[static_cast<std::size_t>(i)];
        for (int j = 0; j < nt; ++j) {
            double t = -kPi + kTwoPi * j / nt;
            double v = phi.value_polar(r, t);
            double fr = phi.dr(r, t);
            double ft = phi.dtheta(r, t) / r;
            double wt = wr * (kTwoPi / nt) * r;
            vol_sq += v * v * wt;
            vol_grad += (fr * fr + ft * ft) * wt;
        }
    }
    double rhs = 8.0 / (rho2 - rho1) * vol_sq + 4.0 * (rho2 - rho1) * vol_grad;
    return {lhs, rhs};
}

double check_l1_bound(const holed::HoledDomain& dom, const NeumannData& data,
                      const holed::HarmonicAnsatz& a, double B) {
    double gsup = data.outer.max_abs();
    for (const auto& g : data.holes) gsup = std::max(gsup, g.max_abs());
    if (gsup == 0.0) return 0.0;
    if (!(B > 0.0)) throw std::invalid_argument("check_l1_bound: B must be positive");
    auto q = holed::domain_quadrature(dom, dom.d / 8.0);
    double l1 = 0.0;
    for (const auto& p : q.points) l1 += std::abs(holed::ansatz_value(a, p));
    l1 *= q.cell_weight;
    return l1 / (B * gsup);
}

double check_interior_estimate(const FieldEvaluator& v, const holed::HoledDomain& dom,
                               const std::vector<Vec2>& probes, double d, int beta_order) {
    if (!(d > 0.0)) throw std::invalid_argument("check_interior_estimate: d must be positive");
    if (beta_order < 0 || beta_order > 2)
        throw std::invalid_argument("check_interior_estimate: order must be 0, 1 or 2");
    double worst = 0.0;
    for (const auto& c : probes) {
        if ((c - dom.z0).norm() + d > dom.r0)
            throw std::domain_error("check_interior_estimate: probe ball leaves the outer circle");
        for (const auto& h : dom.holes)
            if ((c - h.center).norm() < h.radius + d)
                throw std::domain_error("check_interior_estimate: probe ball touches a hole");

        auto point_norm = [&](Vec2 p) {
            switch (beta_order) {
                case 0:
                    return std::abs(v.value(p));
                case 1:
                    return v.gradient(p).norm();
                default:
                    return frob(v.hessian(p));
            }
        };
        double sup = point_norm(c);
        constexpr int snr = 16, snt = 64;
        for (int i = 0; i < snr; ++i) {
            double r = (i + 0.5) * (0.5 * d) / snr;
            for (int j = 0; j < snt; ++j) {
                double t = -kPi + kTwoPi * (j + 0.5) / snt;
                sup = std::max(sup, point_norm(c + r * Vec2{std::cos(t), std::sin(t)}));
            }
        }
        constexpr int lnr = 64, lnt = 128;
        double l1 = 0.0;
        for (int i = 0; i < lnr; ++i) {
            double r = d * std::sqrt((i + 0.5) / lnr);
            for (int j = 0; j < lnt; ++j) {
                double t = -kPi + kTwoPi * (j + 0.5) / lnt;
                l1 += std::abs(v.value(c + r * Vec2{std::cos(t), std::sin(t)}));
            }
        }
        l1 *= kPi * d * d / (static_cast<double>(lnr) * lnt);
        if (l1 <= 0.0) throw std::runtime_error("check_interior_estimate: vanishing L1 mass");
        worst = std::max(worst, sup * std::pow(d, 2.0 + beta_order) / l1);
    }
    return worst;
}

}  // namespace circpot::metrics
