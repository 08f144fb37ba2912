#pragma once

#include <optional>
#include <vector>

#include "heatbound/common.hpp"

#include <json.hpp>

namespace heatbound {

// Parameters of the off-diagonal bound
// |K| <= c1 t^{-N/2m} exp[-c2 d^{2m/(2m-1)} t^{-1/(2m-1)} + k t].
struct BoundParameters {
    double c1 = 1.0;
    double c2 = 0.25;
    double k = 0.0;
    double T = 0.0;       // time-to-distance threshold (Lemma form (i))
    int m = 1;
    int N = 1;
    double mu = 1.0;
    double epsilon = 0.0;

    void validate_for_kernel() const;
    double distance_exponent() const { return 2.0 * m / (2.0 * m - 1.0); }
    double time_exponent() const { return -1.0 / (2.0 * m - 1.0); }
};

// sigma_m = (2m-1) (2m)^{-2m/(2m-1)} sin(pi/(4m-2)); the sharp decay constant
// of the model operator.
double sharp_decay_constant(int m);

double gaussian_bound_rhs(const BoundParameters& p, double d, double t,
                          bool metric_exponent_active = true);

// Free-space kernel of (-d^2/dx^2)^m on the line:
// K(t,0,d) = (1/pi) int_0^inf exp(-xi^{2m} t) cos(xi d) dxi,
// oscillation-aware panel quadrature, ~1e-10 relative for |K| above the floor.
double free_space_kernel(int m, double t, double d);

struct KernelSample {
    double t = 0.0;
    double d = 0.0;   // metric distance for the pair
    double K = 0.0;   // signed kernel value
};

struct BoundReport {
    double max_ratio = 0.0;  // sup |K| t^{N/2m} exp(+c2 d^gamma t^{-1/(2m-1)} - kt)
    std::optional<KernelSample> violating_sample;
    int samples_checked = 0;
    double fitted_c1 = 0.0;
    double fitted_c2 = 0.0;
    bool pass = false;

    nlohmann::json to_json(const std::string& bound_name, double k, double window_lo,
                           double window_hi) const;
};

// Minimal c1 making the bound hold on the samples (c2, k fixed):
// max over samples of |K| / rhs(c1 = 1).
double fit_min_c1(const std::vector<KernelSample>& samples, const BoundParameters& p,
                  const KernelSample** argmax = nullptr);

// Largest c2 for which the weighted ratio |K| t^{N/2m} e^{c2 w - kt} peaks at
// the smallest sampled w (bisection); equals the sharp constant on kernels
// with exact exponential decay.
double fit_c2_bisection(const std::vector<KernelSample>& samples, const BoundParameters& p);

// Least-squares decay fit on the oscillation envelope:
// -log|K| ~ c2 * w + power * log w + const over envelope maxima of |K|,
// w = d^{2m/(2m-1)} t^{-1/(2m-1)}.
struct EnvelopeFit {
    double c2 = 0.0;
    double power = 0.0;
    double constant = 0.0;
    int points_used = 0;
};
EnvelopeFit fit_decay_envelope(const std::vector<KernelSample>& samples, const BoundParameters& p);

// Full verification report: pass iff max_ratio <= p.c1.
BoundReport verify_gaussian_bound(const std::vector<KernelSample>& samples,
                                  const BoundParameters& p);

// Lemma constant transformations between the "for t/d <= T" and the "+kt"
// forms of the bound.
double growth_rate_from_threshold(double c2, double epsilon, double T, int m);
double threshold_from_growth_rate(double k, double epsilon, int m);

}  // namespace heatbound
