#pragma once

// Test-side reference values and independent oracle routines.  Everything in
// here is deliberately implemented without touching the library's own
// numerical paths (closed forms, series, brute force, adaptive quadrature).

#include <functional>

#include "heatbound/geometry.hpp"

namespace oracles {

// sigma_m evaluated offline in 40-digit arithmetic
inline constexpr double kSigma1 = 0.25;
inline constexpr double kSigma2 = 0.23623519685528871839;
inline constexpr double kSigma3 = 0.17995787985874818256;

// Gamma(5/4)/pi
inline constexpr double kGamma54OverPi = 0.28851686930823484431;

// (4*pi)^{-1/2} e^{-1}
inline constexpr double kGauss_t1_d2 = 0.10377687435514867584;

// (2/pi) sum_n exp(-n^2) sin^2(n pi/2): Dirichlet Laplacian kernel on (0,pi)
// at t = 1, x = y = pi/2
inline constexpr double kSineSeriesMidpoint = 0.23427789122750357217;

// int_{-1}^{1} exp(-1/(1-z^2)) dz
inline constexpr double kBumpMass1D = 0.44399381616807943782;

// derivative integral of the normalized 1D bump: 2 k(0) = 2 e^{-1} / mass
inline constexpr double kBumpK21 = 1.6571376797382103033;

// int_{B(0;1)} |d/dz1 k| for the normalized 2D bump
inline constexpr double kBumpK22 = 1.9034598980025697644;

// clamped beam on (0,1): first root of cos(mu) cosh(mu) = 1 and its 4th power
inline constexpr double kClampedBeamMu1 = 4.730040744862704026;
inline constexpr double kClampedBeamLambda1 = 500.56390174043259597;

// root of cos(mu) cosh(mu) = 1 found by bisection (independent of the frozen
// value above; the two are cross-checked in the tests)
double clamped_beam_mu1();

// (2/L) sum_n exp(-(n pi/L)^2 t) sin(n pi x/L) sin(n pi y/L)
double dirichlet_interval_kernel(double t, double x, double y, double length);

// exact eigenvalues of the tridiagonal Dirichlet difference Laplacian with
// n interior nodes and spacing h: (4/h^2) sin^2(k h' / 2), h' = L/(n+1)
double dirichlet_difference_eigenvalue(int k, int interior_nodes, double length);

// adaptive Simpson quadrature
double integrate(const std::function<double(double)>& f, double a, double b, double tol);

// nearest boundary point by dense sampling + local trisection refinement
heatbound::Vec2 brute_force_nearest_boundary(const heatbound::Domain& domain,
                                             const heatbound::Vec2& z, int samples);

// rolling-ball emptiness check against a dense boundary sampling, skipping
// the tangency point itself
bool brute_force_ball_empty(const heatbound::Domain& domain, const heatbound::Vec2& p,
                            const heatbound::Vec2& inward_normal, double sign, double r,
                            int samples, double slack);

}  // namespace oracles
