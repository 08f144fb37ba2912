#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "heatbound/grid.hpp"

namespace heatbound {

enum class MetricMethod {
    euclidean,
    geodesic_grid,
    geodesic_visibility,
    mollified_test_function,
    penult_formula,
};

struct MetricEstimate {
    double lower = 0.0;
    double upper = 0.0;
    MetricMethod method = MetricMethod::euclidean;
};

inline double euclidean_distance(const Vec2& x, const Vec2& y) { return distance(x, y); }

// Smooth radial bump c * exp(-1/(1-|z|^2)) on the unit ball, together with
// the table of derivative integrals and the constant
// K = sup_{1<=|j|<=m-1} (int_B |D^j k|)^{1/|j|}.
class MollifierKernel {
public:
    int m = 2;
    int dimension = 2;
    double normalization = 0.0;  // c
    double K = 0.0;
    // multi-index (j1,j2) -> int_B |D^j k|
    std::vector<std::pair<std::array<int, 2>, double>> derivative_integrals;

    double value(const Vec2& z) const;  // k(z), zero outside the unit ball
};

// Computes the derivative-integral table by tensor quadrature with analytic
// derivatives of the bump profile; two refinement levels must agree to 1e-6
// relative or a BudgetError is thrown.  m = 1 has an empty table and K = 0.
MollifierKernel make_mollifier(int m, int dimension, int quadrature_points);

// Geodesic distance estimates on a masked grid, with exact visibility-graph
// values on polygonal domains and cached single-source distance fields.
class GeodesicSolver {
public:
    GeodesicSolver(const Domain& domain, const GridDiscretization& grid);

    // Bracketing estimate of d_g(x, y).  Exact (lower == upper) when the
    // straight segment stays in the closed region or the domain is polygonal.
    MetricEstimate distance(const Vec2& x, const Vec2& y) const;

    // d_g(x, .) evaluated at w in the closed region, via the cached field of
    // the node nearest to x (O(h) interpolation).
    double field_value(const Vec2& x, const Vec2& w) const;

    double grid_tolerance(double dg) const { return 0.03 * dg + 2 * grid_->spacing(); }
    const GridDiscretization& grid() const { return *grid_; }
    int snap(const Vec2& p) const;
    bool segment_in_closure(const Vec2& a, const Vec2& b) const;
    // exact shortest path inside a simple polygon (visibility graph)
    double visibility_distance(const Vec2& x, const Vec2& y) const;

    const std::vector<double>& field_from(int node) const;

private:
    const Domain* domain_;
    const GridDiscretization* grid_;
    mutable std::mutex cache_mutex_;
    mutable std::map<int, std::shared_ptr<const std::vector<double>>> field_cache_;
};

// f_{m,beta,x}(y): mollified geodesic distance test function
// (1 - K/(beta r)) * int_{B(0;K/beta)} d_x(z + y) k_{K/beta}(z) dz.
double mollified_distance(const Domain& domain, const Reach& reach, const GeodesicSolver& solver,
                          const MollifierKernel& kernel, double beta, const Vec2& x, const Vec2& y);

// Bracket for the Riemannian-type metric d_{m,beta}(x,y):
// lower = best witness (linear, mollified test function, explicit formula),
// upper = geodesic distance.  Requires beta >= 4K/r.
MetricEstimate riemannian_type_estimate(const Domain& domain, const Reach& reach,
                                        const GeodesicSolver& solver, const MollifierKernel& kernel,
                                        int m, double beta, const Vec2& x, const Vec2& y);

// mu^{-1/2m} d_{m,beta}: certified lower bound for the Finsler-type metric of
// a symbol with ellipticity ratio mu >= 1.
double finsler_scaling_bound(double mu, int m, double d_m_beta);

}  // namespace heatbound
