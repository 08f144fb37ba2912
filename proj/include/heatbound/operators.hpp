#pragma once

#include <array>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "heatbound/grid.hpp"

#include <json.hpp>

namespace heatbound {

// Garding-inequality data for a constant-coefficient form.
struct EllipticFormSpec {
    int m = 1;
    int N = 2;
    double lambda = 1.0;
    double mu = 1.0;
    double c_shift = 0.0;
    double d_shift = 0.0;
    bool homogeneous = true;

    void validate() const;
};

// Discrete polyharmonic operator (-Laplace)^m with Dirichlet conditions on a
// masked grid.  m = 1 is the 5-point (3-point in 1D) Laplacian with
// exterior-zero extension; m = 2 restricts the free 13-point (5-point in 1D)
// bilaplacian stencil to in-domain nodes, which enforces the clamped
// conditions u = du/dn = 0.
Eigen::MatrixXd assemble_polyharmonic(const GridDiscretization& grid, int m);

// Eigenpairs of a discrete operator, scaled so that the discrete L^2 inner
// product h^N sum_i phi(x_i) psi(x_i) is orthonormal; heat kernel values then
// approximate the continuum kernel.
class SpectralHeatKernel {
public:
    SpectralHeatKernel(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors, int m, int N,
                       double h);

    int size() const { return static_cast<int>(eigenvalues_.size()); }
    int order() const { return m_; }
    int dimension() const { return N_; }
    double spacing() const { return h_; }
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }

    // K(t, x_i, y_j) = sum_n e^{-lambda_n t} phi_n(x_i) phi_n(y_j)
    double value(double t, int xi, int yj) const;
    double max_on_diagonal(double t) const;
    // matrix exp(-A t) in the plain node basis
    Eigen::MatrixXd semigroup_matrix(double t) const;

    nlohmann::json spectrum_json() const;

private:
    Eigen::VectorXd eigenvalues_;   // ascending
    Eigen::MatrixXd eigenvectors_;  // columns, h^{N/2}-scaled orthonormal
    int m_;
    int N_;
    double h_;
};

// Dense symmetric eigendecomposition (budget: dimension <= 4000); verifies a
// sample of residuals ||Av - lambda v|| <= 1e-8 ||A||.
SpectralHeatKernel spectral_decompose(const Eigen::MatrixXd& op, const GridDiscretization& grid,
                                      int m);

// ||exp(-H_{alpha phi} t)||_2 where H_{alpha phi} = e^{alpha phi} H e^{-alpha phi},
// computed through the similarity D e^{-Ht} D^{-1} and power iteration.
double twisted_semigroup_norm(const SpectralHeatKernel& spec, const std::vector<double>& phi,
                              double alpha, double t);

// Quadratic-form values (Q(f), Re Q_{alpha phi}(f)) for a node vector f, used
// by the twisted-form perturbation scan.
std::pair<double, double> twisted_form_values(const Eigen::MatrixXd& op,
                                              const std::vector<double>& phi, double alpha,
                                              const Eigen::VectorXd& f, double h, int N);

// Constant-coefficient principal symbol a(xi) = sum_{|k|=2m} (2m)!/k! a_k xi^k.
struct SymbolSpec {
    int m = 1;
    int N = 2;
    std::map<std::array<int, 2>, double> coefficients;  // a_k, |k| = 2m

    double symbol(const Vec2& xi) const;
    // Gamma_{pq} = a_{p+q} over the multi-indices |p| = |q| = m
    Eigen::MatrixXd gamma_matrix() const;
    static SymbolSpec polyharmonic(int m, int N);
    // two-sided ellipticity check on sampled unit vectors
    bool ellipticity_in(double lambda, double mu, int samples = 256) const;
};

struct ConvexityResult {
    bool strongly_convex = false;
    double min_eigenvalue = 0.0;
    Eigen::VectorXd witness;  // violating zeta when not convex
};

ConvexityResult strong_convexity_check(const SymbolSpec& symbol);

std::vector<std::array<int, 2>> order_multi_indices(int order, int dimension);

}  // namespace heatbound
