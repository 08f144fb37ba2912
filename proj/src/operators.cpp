#include "heatbound/operators.hpp"

#include <algorithm>
#include <cmath>

namespace heatbound {

void EllipticFormSpec::validate() const {
    if (!(0 < lambda && lambda <= mu)) throw std::invalid_argument("need 0 < lambda <= mu");
    if (c_shift < 0 || d_shift < 0) throw std::invalid_argument("zero-order shifts must be >= 0");
    if (homogeneous && (c_shift != 0 || d_shift != 0))
        throw std::invalid_argument("homogeneous forms have c = d = 0");
    if (m < 1 || (N != 1 && N != 2)) throw std::invalid_argument("need m >= 1 and N in {1,2}");
}

namespace {

struct StencilEntry {
    int dx, dy;
    double w;
};

// free-space Laplacian stencil scaled by h^2
std::vector<StencilEntry> laplacian_stencil(int dim) {
    if (dim == 1) return {{0, 0, 2}, {1, 0, -1}, {-1, 0, -1}};
    return {{0, 0, 4}, {1, 0, -1}, {-1, 0, -1}, {0, 1, -1}, {0, -1, -1}};
}

// composition of the Laplacian stencil with itself over the free lattice
std::vector<StencilEntry> bilaplacian_stencil(int dim) {
    const auto lap = laplacian_stencil(dim);
    std::map<std::pair<int, int>, double> acc;
    for (const auto& a : lap)
        for (const auto& b : lap) acc[{a.dx + b.dx, a.dy + b.dy}] += a.w * b.w;
    std::vector<StencilEntry> out;
    for (const auto& [k, w] : acc)
        if (w != 0.0) out.push_back({k.first, k.second, w});
    return out;
}

}  // namespace

Eigen::MatrixXd assemble_polyharmonic(const GridDiscretization& grid, int m) {
    if (m != 1 && m != 2) throw std::invalid_argument("assemble_polyharmonic: m must be 1 or 2");
    const int n = grid.size();
    if (n == 0) throw GeometryError("assemble_polyharmonic: empty grid");
    const int dim = grid.dimension();
    const double scale = 1.0 / std::pow(grid.spacing(), 2.0 * m);
    const auto stencil = m == 1 ? laplacian_stencil(dim) : bilaplacian_stencil(dim);

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& node = grid.node(i);
        for (const auto& e : stencil) {
            const int j = grid.node_at(node.ix + e.dx, dim == 1 ? 0 : node.iy + e.dy);
            if (j >= 0) A(i, j) += e.w * scale;
            // exterior neighbours carry u = 0 and are dropped
        }
    }
    return A;
}

// ---------------------------------------------------------------------------

SpectralHeatKernel::SpectralHeatKernel(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors,
                                       int m, int N, double h)
    : eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)),
      m_(m),
      N_(N),
      h_(h) {}

double SpectralHeatKernel::value(double t, int xi, int yj) const {
    if (!(t > 0)) throw std::invalid_argument("heat kernel needs t > 0");
    const double lead = std::exp(-eigenvalues_[0] * t);
    double acc = 0.0;
    for (int k = 0; k < size(); ++k) {
        const double w = std::exp(-eigenvalues_[k] * t);
        if (w < 1e-16 * lead) break;  // eigenvalues ascend
        acc += w * eigenvectors_(xi, k) * eigenvectors_(yj, k);
    }
    return acc;
}

double SpectralHeatKernel::max_on_diagonal(double t) const {
    if (!(t > 0)) throw std::invalid_argument("heat kernel needs t > 0");
    const double lead = std::exp(-eigenvalues_[0] * t);
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(eigenvectors_.rows());
    for (int k = 0; k < size(); ++k) {
        const double w = std::exp(-eigenvalues_[k] * t);
        if (w < 1e-16 * lead) break;
        diag += w * eigenvectors_.col(k).cwiseAbs2();
    }
    return diag.maxCoeff();
}

Eigen::MatrixXd SpectralHeatKernel::semigroup_matrix(double t) const {
    if (!(t > 0)) throw std::invalid_argument("heat kernel needs t > 0");
    // plain node basis: undo the h^{N/2} scaling
    const double s = std::pow(h_, N_);
    Eigen::VectorXd w = (-eigenvalues_.array() * t).exp();
    return s * (eigenvectors_ * w.asDiagonal() * eigenvectors_.transpose());
}

nlohmann::json SpectralHeatKernel::spectrum_json() const {
    nlohmann::json j;
    j["eigenvalues"] = std::vector<double>(eigenvalues_.data(), eigenvalues_.data() + size());
    j["h"] = h_;
    j["m"] = m_;
    j["N"] = N_;
    j["node_count"] = static_cast<int>(eigenvectors_.rows());
    return j;
}

SpectralHeatKernel spectral_decompose(const Eigen::MatrixXd& op, const GridDiscretization& grid,
                                      int m) {
    const int n = static_cast<int>(op.rows());
    if (n > 4000)
        throw BudgetError("dense eigensolver budget is 4000 nodes; use a coarser grid");
    if ((op - op.transpose()).cwiseAbs().maxCoeff() > 1e-10 * op.cwiseAbs().maxCoeff())
        throw std::invalid_argument("spectral_decompose expects a symmetric matrix");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");

    const double norm_scale = op.cwiseAbs().maxCoeff();
    const Eigen::VectorXd& w = solver.eigenvalues();
    const Eigen::MatrixXd& v = solver.eigenvectors();
    // residual spot check
    const int checks = std::min(n, 24);
    for (int c = 0; c < checks; ++c) {
        const int k = static_cast<int>(static_cast<long long>(c) * (n - 1) / std::max(1, checks - 1));
        const double res = (op * v.col(k) - w[k] * v.col(k)).norm();
        if (res > 1e-8 * std::max(1.0, norm_scale))
            throw std::runtime_error("eigenpair residual above tolerance");
    }

    const double scale = std::pow(grid.spacing(), -0.5 * grid.dimension());
    return SpectralHeatKernel(w, v * scale, m, grid.dimension(), grid.spacing());
}

double twisted_semigroup_norm(const SpectralHeatKernel& spec, const std::vector<double>& phi,
                              double alpha, double t) {
    if (!(t > 0)) throw std::invalid_argument("twisted semigroup needs t > 0");
    const int n = static_cast<int>(phi.size());
    if (n != static_cast<int>(spec.eigenvectors().rows()))
        throw std::invalid_argument("phi size does not match node count");
    const auto [lo, hi] = std::minmax_element(phi.begin(), phi.end());
    if (std::abs(alpha) * (*hi - *lo) > 200.0)
        throw std::invalid_argument("alpha * range(phi) > 200: overflow guard");

    Eigen::VectorXd d(n), dinv(n);
    for (int i = 0; i < n; ++i) {
        d[i] = std::exp(alpha * phi[i]);
        dinv[i] = 1.0 / d[i];
    }
    const Eigen::VectorXd expw = (-spec.eigenvalues().array() * t).exp();
    const Eigen::MatrixXd& v = spec.eigenvectors();  // scaled columns; scaling cancels in M

    auto apply_m = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Eigen::VectorXd u = dinv.cwiseProduct(x);
        Eigen::VectorXd w = v.transpose() * u;
        w = expw.cwiseProduct(w);
        Eigen::VectorXd z = v * w;
        return d.cwiseProduct(z) * std::pow(spec.spacing(), spec.dimension());
    };
    auto apply_mt = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Eigen::VectorXd u = d.cwiseProduct(x);
        Eigen::VectorXd w = v.transpose() * u;
        w = expw.cwiseProduct(w);
        Eigen::VectorXd z = v * w;
        return dinv.cwiseProduct(z) * std::pow(spec.spacing(), spec.dimension());
    };

    // power iteration on M^T M
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n).normalized();
    double sigma2 = 0.0;
    for (int it = 0; it < 5000; ++it) {
        Eigen::VectorXd y = apply_mt(apply_m(x));
        const double next = y.norm();
        if (next == 0.0) return 0.0;
        y /= next;
        if (std::abs(next - sigma2) <= 1e-9 * next && it > 4) {
            sigma2 = next;
            break;
        }
        sigma2 = next;
        x = y;
    }
    return std::sqrt(sigma2);
}

std::pair<double, double> twisted_form_values(const Eigen::MatrixXd& op,
                                              const std::vector<double>& phi, double alpha,
                                              const Eigen::VectorXd& f, double h, int N) {
    const int n = static_cast<int>(f.size());
    Eigen::VectorXd d(n), dinv(n);
    for (int i = 0; i < n; ++i) {
        d[i] = std::exp(alpha * phi[i]);
        dinv[i] = 1.0 / d[i];
    }
    const double vol = std::pow(h, N);
    const double q = f.dot(op * f) * vol;
    // Re Q_{alpha phi}(f) = f . sym(D A D^{-1}) f
    const Eigen::VectorXd g = dinv.cwiseProduct(f);
    const Eigen::VectorXd gd = d.cwiseProduct(f);
    const double q_twist = 0.5 * (gd.dot(op * g) + g.dot(op * gd)) * vol;
    return {q, q_twist};
}

// ---------------------------------------------------------------------------
// Symbol machinery

std::vector<std::array<int, 2>> order_multi_indices(int order, int dimension) {
    std::vector<std::array<int, 2>> out;
    if (dimension == 1) {
        out.push_back({order, 0});
    } else {
        for (int a = order; a >= 0; --a) out.push_back({a, order - a});
    }
    return out;
}

namespace {
double factorial(int n) {
    double r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}
}  // namespace

double SymbolSpec::symbol(const Vec2& xi) const {
    double acc = 0.0;
    const double fact2m = factorial(2 * m);
    for (const auto& [k, a] : coefficients) {
        const double mult = fact2m / (factorial(k[0]) * factorial(k[1]));
        acc += mult * a * std::pow(xi.x, k[0]) * (N == 2 ? std::pow(xi.y, k[1]) : 1.0);
    }
    return acc;
}

Eigen::MatrixXd SymbolSpec::gamma_matrix() const {
    const auto idx = order_multi_indices(m, N);
    const int nu = static_cast<int>(idx.size());
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(nu, nu);
    for (int p = 0; p < nu; ++p) {
        for (int q = 0; q < nu; ++q) {
            const std::array<int, 2> k{idx[p][0] + idx[q][0], idx[p][1] + idx[q][1]};
            const auto it = coefficients.find(k);
            gamma(p, q) = it == coefficients.end() ? 0.0 : it->second;
        }
    }
    return gamma;
}

SymbolSpec SymbolSpec::polyharmonic(int m, int N) {
    SymbolSpec s;
    s.m = m;
    s.N = N;
    const double fact2m = factorial(2 * m);
    for (const auto& a : order_multi_indices(m, N)) {
        const std::array<int, 2> k{2 * a[0], 2 * a[1]};
        const double fm = factorial(m) / (factorial(a[0]) * factorial(a[1]));
        s.coefficients[k] = fm * factorial(k[0]) * factorial(k[1]) / fact2m;
    }
    return s;
}

bool SymbolSpec::ellipticity_in(double lambda, double mu, int samples) const {
    for (int i = 0; i < samples; ++i) {
        Vec2 xi{1.0, 0.0};
        if (N == 2) {
            const double th = 2 * 3.14159265358979323846 * i / samples;
            xi = {std::cos(th), std::sin(th)};
        }
        const double a = symbol(xi);
        if (a < lambda - 1e-9 || a > mu + 1e-9) return false;
        if (N == 1) break;
    }
    return true;
}

ConvexityResult strong_convexity_check(const SymbolSpec& symbol) {
    const Eigen::MatrixXd gamma = symbol.gamma_matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gamma);
    ConvexityResult result;
    result.min_eigenvalue = solver.eigenvalues()[0];
    result.strongly_convex = result.min_eigenvalue >= -1e-10;
    if (!result.strongly_convex) result.witness = solver.eigenvectors().col(0);
    return result;
}

}  // namespace heatbound
