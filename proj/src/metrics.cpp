#include "heatbound/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace heatbound {

namespace {

constexpr double kPi = 3.14159265358979323846;

double bump_profile(double rho2) {
    return rho2 < 1.0 ? std::exp(-1.0 / (1.0 - rho2)) : 0.0;
}

// |D^j exp(-1/(1-|z|^2))| / exp(-1/(1-|z|^2)) for |j| <= 2
double derivative_factor(const std::array<int, 2>& j, double z1, double z2) {
    const double rho2 = z1 * z1 + z2 * z2;
    const double q = 1.0 - rho2;
    const double q2 = q * q;
    const int order = j[0] + j[1];
    const double z[2] = {z1, z2};
    if (order == 1) {
        const int i = j[0] == 1 ? 0 : 1;
        return std::abs(-2.0 * z[i] / q2);
    }
    // order == 2: D_i D_l with v_i = -2 z_i / q^2, w_il = -2 delta_il/q^2 - 8 z_i z_l / q^3
    int i, l;
    if (j[0] == 2) { i = 0; l = 0; }
    else if (j[1] == 2) { i = 1; l = 1; }
    else { i = 0; l = 1; }
    const double vi = -2.0 * z[i] / q2;
    const double vl = -2.0 * z[l] / q2;
    const double w = (i == l ? -2.0 / q2 : 0.0) - 8.0 * z[i] * z[l] / (q2 * q);
    return std::abs(vi * vl + w);
}

std::vector<std::array<int, 2>> multi_indices(int order, int dimension) {
    std::vector<std::array<int, 2>> out;
    if (dimension == 1) {
        out.push_back({order, 0});
    } else {
        for (int a = order; a >= 0; --a) out.push_back({a, order - a});
    }
    return out;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    // Newton iteration on Legendre polynomials
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

// integral over the unit ball of g; 2D uses a polar rule on one quadrant
// (integrands here are reflection symmetric), 1D a symmetric rule on [0, 1].
template <typename F>
double ball_integral(const F& g, int dimension, int n) {
    std::vector<double> xs, ws;
    gauss_legendre(n, xs, ws);
    if (dimension == 1) {
        double acc = 0;
        for (int i = 0; i < n; ++i) {
            const double rho = 0.5 * (xs[i] + 1.0);
            acc += 0.5 * ws[i] * (g(rho, 0.0) + g(-rho, 0.0));
        }
        return acc;
    }
    std::vector<double> ts, tw;
    gauss_legendre(n, ts, tw);
    double acc = 0;
    for (int i = 0; i < n; ++i) {
        const double rho = 0.5 * (xs[i] + 1.0);
        const double wr = 0.5 * ws[i] * rho;
        for (int j = 0; j < n; ++j) {
            const double th = (kPi / 4) * (ts[j] + 1.0);  // [0, pi/2]
            acc += wr * (kPi / 4) * tw[j] * g(rho * std::cos(th), rho * std::sin(th));
        }
    }
    return 4.0 * acc;
}

}  // namespace

double MollifierKernel::value(const Vec2& z) const {
    const double rho2 = dimension == 1 ? z.x * z.x : z.squared_norm();
    return normalization * bump_profile(rho2);
}

MollifierKernel make_mollifier(int m, int dimension, int quadrature_points) {
    if (m < 1) throw std::invalid_argument("mollifier: m must be >= 1");
    if (m > 3) throw std::invalid_argument("mollifier: orders above 3 not tabulated");
    if (dimension != 1 && dimension != 2)
        throw std::invalid_argument("mollifier: dimension must be 1 or 2");
    const int n = std::max(32, quadrature_points);

    auto total_mass = [&](int nq) {
        return ball_integral([](double a, double b) { return bump_profile(a * a + b * b); },
                             dimension, nq);
    };
    const double mass = total_mass(n);
    const double mass2 = total_mass(2 * n);
    if (std::abs(mass - mass2) > 1e-6 * std::abs(mass2))
        throw BudgetError("mollifier quadrature did not converge");

    MollifierKernel kernel;
    kernel.m = m;
    kernel.dimension = dimension;
    kernel.normalization = 1.0 / mass2;

    double K = 0.0;
    for (int order = 1; order <= m - 1; ++order) {
        for (const auto& j : multi_indices(order, dimension)) {
            auto integrand = [&](double a, double b) {
                return bump_profile(a * a + b * b) * derivative_factor(j, a, b);
            };
            const double v1 = ball_integral(integrand, dimension, n);
            const double v2 = ball_integral(integrand, dimension, 2 * n);
            if (std::abs(v1 - v2) > 1e-6 * std::abs(v2))
                throw BudgetError("mollifier quadrature did not converge");
            const double val = kernel.normalization * v2;
            kernel.derivative_integrals.push_back({j, val});
            K = std::max(K, std::pow(val, 1.0 / order));
        }
    }
    kernel.K = K;  // m = 1: empty sup, K = 0 by convention
    return kernel;
}

// ---------------------------------------------------------------------------
// GeodesicSolver

GeodesicSolver::GeodesicSolver(const Domain& domain, const GridDiscretization& grid)
    : domain_(&domain), grid_(&grid) {}

bool GeodesicSolver::segment_in_closure(const Vec2& a, const Vec2& b) const {
    const double tol = 1e-9 * std::max(1.0, domain_->diameter());
    const double len = heatbound::distance(a, b);
    const int steps = std::max(4, static_cast<int>(std::ceil(4 * len / grid_->spacing())));
    for (int s = 0; s <= steps; ++s) {
        const double u = static_cast<double>(s) / steps;
        if (!domain_->inside_closure(a + (b - a) * u, tol)) return false;
    }
    return true;
}

int GeodesicSolver::snap(const Vec2& p) const {
    const int id = grid_->nearest_node(p, 2.5 * grid_->spacing());
    if (id < 0) throw GeometryError("point is below grid resolution (no node within 2.5h)");
    return id;
}

const std::vector<double>& GeodesicSolver::field_from(int node) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = field_cache_.find(node);
    if (it == field_cache_.end()) {
        auto field = std::make_shared<std::vector<double>>(distance_field(*grid_, node));
        it = field_cache_.emplace(node, std::move(field)).first;
    }
    return *it->second;
}

namespace {

bool proper_crossing(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return (q - p).cross(r - p);
    };
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) &&
           ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

}  // namespace

double GeodesicSolver::visibility_distance(const Vec2& x, const Vec2& y) const {
    const auto& poly = domain_->polygon();
    std::vector<Vec2> pts = {x, y};
    pts.insert(pts.end(), poly.begin(), poly.end());
    const std::size_t n = pts.size();
    const double tol = 1e-12 * std::max(1.0, domain_->diameter());

    auto visible = [&](const Vec2& a, const Vec2& b) {
        if (heatbound::distance(a, b) < tol) return true;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Vec2& c = poly[i];
            const Vec2& d = poly[(i + 1) % poly.size()];
            if (proper_crossing(a, b, c, d)) return false;
        }
        for (int s = 1; s < 16; ++s) {
            const double u = s / 16.0;
            if (!domain_->inside_closure(a + (b - a) * u, tol)) return false;
        }
        return true;
    };

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<bool> done(n, false);
    dist[0] = 0.0;
    for (std::size_t it = 0; it < n; ++it) {
        std::size_t u = n;
        double best = inf;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && dist[i] < best) { best = dist[i]; u = i; }
        if (u == n) break;
        done[u] = true;
        if (u == 1) break;
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v]) continue;
            if (!visible(pts[u], pts[v])) continue;
            const double nd = dist[u] + heatbound::distance(pts[u], pts[v]);
            if (nd < dist[v]) dist[v] = nd;
        }
    }
    if (!std::isfinite(dist[1])) throw GeometryError("disconnected");
    return dist[1];
}

MetricEstimate GeodesicSolver::distance(const Vec2& x, const Vec2& y) const {
    const double tol = 1e-9 * std::max(1.0, domain_->diameter());
    if (!domain_->inside_closure(x, tol) || !domain_->inside_closure(y, tol))
        throw GeometryError("geodesic distance: endpoint outside the closed region");
    const double d0 = heatbound::distance(x, y);
    if (d0 == 0.0) return {0.0, 0.0, MetricMethod::euclidean};
    if (segment_in_closure(x, y)) return {d0, d0, MetricMethod::euclidean};
    if (!domain_->polygon().empty()) {
        const double vis = visibility_distance(x, y);
        return {d0, vis, MetricMethod::geodesic_visibility};
    }
    const int nx = snap(x), ny = snap(y);
    const auto& field = field_from(nx);
    const double du = field[ny];
    if (!std::isfinite(du)) throw GeometryError("disconnected");
    const double upper = du + heatbound::distance(x, grid_->node(nx).p) +
                         heatbound::distance(y, grid_->node(ny).p);
    return {d0, std::max(d0, upper), MetricMethod::geodesic_grid};
}

double GeodesicSolver::field_value(const Vec2& x, const Vec2& w) const {
    const int src = snap(x);
    const auto& field = field_from(src);
    const double snap_x = heatbound::distance(x, grid_->node(src).p);
    // Lipschitz extension: min over nearby nodes of field + Euclidean hop
    const double h = grid_->spacing();
    double best = std::numeric_limits<double>::infinity();
    for (double radius : {1.6 * h, 3.2 * h, 6.4 * h}) {
        const auto bb = domain_->bounding_box();
        const int reachc = static_cast<int>(std::ceil(radius / h));
        const int ci = static_cast<int>(std::lround((w.x - bb[0].x) / h));
        const int cj = grid_->dimension() == 1
                           ? 0
                           : static_cast<int>(std::lround((w.y - bb[0].y) / h));
        for (int dj = -reachc; dj <= reachc; ++dj) {
            for (int di = -reachc; di <= reachc; ++di) {
                const int id = grid_->node_at(ci + di, grid_->dimension() == 1 ? 0 : cj + dj);
                if (id < 0 || !std::isfinite(field[id])) continue;
                best = std::min(best, field[id] + heatbound::distance(w, grid_->node(id).p));
            }
            if (grid_->dimension() == 1) break;
        }
        if (std::isfinite(best)) break;
    }
    if (!std::isfinite(best))
        throw GeometryError("distance field interpolation: no reachable node near point");
    return best + snap_x;
}

// ---------------------------------------------------------------------------

double mollified_distance(const Domain& domain, const Reach& reach, const GeodesicSolver& solver,
                          const MollifierKernel& kernel, double beta, const Vec2& x, const Vec2& y) {
    if (kernel.m < 2) throw std::invalid_argument("mollified distance needs m >= 2 (K > 0)");
    if (!(beta > kernel.K / reach.r))
        throw std::invalid_argument("mollified distance requires beta > K/r");
    const double delta = kernel.K / beta;
    const int n_r = 33, n_th = 34;

    // reference rule on the unit ball with weights including k and normalized
    // to unit discrete mass (computed once per kernel/dimension)
    struct Rule {
        std::vector<Vec2> points;
        std::vector<double> weights;
    };
    static std::mutex rule_mutex;
    static std::map<std::pair<int, int>, Rule> rules;
    const std::pair<int, int> key{kernel.dimension, n_r};
    Rule* rule = nullptr;
    {
        std::lock_guard<std::mutex> lock(rule_mutex);
        auto it = rules.find(key);
        if (it == rules.end()) {
            Rule r;
            std::vector<double> xs, ws;
            gauss_legendre(n_r, xs, ws);
            if (kernel.dimension == 1) {
                for (int i = 0; i < n_r; ++i) {
                    r.points.push_back({xs[i], 0.0});
                    r.weights.push_back(ws[i] * bump_profile(xs[i] * xs[i]));
                }
            } else {
                for (int i = 0; i < n_r; ++i) {
                    const double rho = 0.5 * (xs[i] + 1.0);
                    for (int j = 0; j < n_th; ++j) {
                        const double th = 2 * kPi * (j + 0.5) / n_th;
                        r.points.push_back({rho * std::cos(th), rho * std::sin(th)});
                        r.weights.push_back(0.5 * ws[i] * rho * bump_profile(rho * rho));
                    }
                }
            }
            double sum = 0;
            for (double w : r.weights) sum += w;
            for (double& w : r.weights) w /= sum;
            it = rules.emplace(key, std::move(r)).first;
        }
        rule = &it->second;
    }

    double acc = 0.0;
    for (std::size_t q = 0; q < rule->points.size(); ++q) {
        Vec2 w = y + rule->points[q] * delta;
        if (!domain.inside(w)) {
            if (domain.distance_to_boundary(w) >= reach.r)
                throw GeometryError("quadrature point outside tubular neighborhood");
            w = project_to_closure(domain, reach, w);
        }
        acc += rule->weights[q] * solver.field_value(x, w);
    }
    return (1.0 - kernel.K / (beta * reach.r)) * acc;
}

MetricEstimate riemannian_type_estimate(const Domain& domain, const Reach& reach,
                                        const GeodesicSolver& solver, const MollifierKernel& kernel,
                                        int m, double beta, const Vec2& x, const Vec2& y) {
    if (kernel.m != m) throw std::invalid_argument("kernel order does not match m");
    if (beta < 4 * kernel.K / reach.r - 1e-12)
        throw std::invalid_argument("below 4K/r");
    const MetricEstimate dg = solver.distance(x, y);

    MetricEstimate est;
    est.upper = dg.upper;
    if (m == 1) {
        // E_{1,beta} is the 1-Lipschitz class for every beta: d_{1,beta} = d_g
        est.lower = dg.upper;
        est.method = dg.method;
        return est;
    }
    // linear witness, valid in any region
    est.lower = distance(x, y);
    est.method = MetricMethod::euclidean;
    const double penult = dg.upper * (1.0 - kernel.K / (beta * reach.r)) - 2.0 * kernel.K / beta;
    if (penult > est.lower) {
        est.lower = penult;
        est.method = MetricMethod::penult_formula;
    }
    const double fw = mollified_distance(domain, reach, solver, kernel, beta, x, y) -
                      mollified_distance(domain, reach, solver, kernel, beta, x, x);
    if (fw > est.lower) {
        est.lower = fw;
        est.method = MetricMethod::mollified_test_function;
    }
    return est;
}

double finsler_scaling_bound(double mu, int m, double d_m_beta) {
    if (!(mu >= 1.0)) throw std::invalid_argument("finsler scaling requires mu >= 1");
    return std::pow(mu, -1.0 / (2.0 * m)) * d_m_beta;
}

}  // namespace heatbound
