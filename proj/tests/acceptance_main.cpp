// Acceptance suite: one check per quantitative claim, each printing a single
// PASS/FAIL line with the measured numbers.  Run with --criterion N for one
// check or with no arguments for the full battery.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "heatbound/scenario.hpp"
#include "oracles.hpp"

using namespace heatbound;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome criterion_sigma() {
    const double s1 = sharp_decay_constant(1);
    const double s2 = sharp_decay_constant(2);
    const bool ok1 = std::abs(s1 - 0.25) <= 1e-12;
    const bool ok2 = std::abs(s2 - oracles::kSigma2) <= 1e-10;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "sigma_1=%.15g (err %.2e), sigma_2=%.15g (err %.2e)", s1,
                  std::abs(s1 - 0.25), s2, std::abs(s2 - oracles::kSigma2));
    return {ok1 && ok2, buf};
}

Outcome criterion_free_gaussian_m1() {
    const SharpnessResult r = run_sharpness(1);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "max rel kernel err %.2e (tol 1e-9), fitted c2=%.9f (target 0.25 +/- 1e-6)",
                  r.kernel_check_value, r.fitted_c2);
    return {r.pass, buf};
}

Outcome criterion_free_sharpness_m2() {
    const SharpnessResult r = run_sharpness(2);
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "fitted c2=%.6f vs sigma_2=%.6f (rel err %.2f%%, tol 5%%); K(1,0,0)=%.10f vs "
                  "Gamma(5/4)/pi (err %.2e)",
                  r.fitted_c2, r.target, 100 * r.rel_err, r.kernel_check_value,
                  std::abs(r.kernel_check_value - oracles::kGamma54OverPi));
    return {r.pass, buf};
}

struct SandwichContext {
    Domain domain = Domain::horseshoe(1, 2, 0.3);
    GridDiscretization grid{domain, domain.diameter() / 120};
    GeodesicSolver solver{domain, grid};
    std::vector<std::array<Vec2, 2>> pairs;
    SandwichContext() {
        PairSpec spec;
        spec.count = 50;
        spec.seed = 20260810;
        spec.has_seed = true;
        spec.close_pairs = 6;
        spec.tip_pairs = 3;
        pairs = sample_pairs(domain, grid, solver, spec);
    }
};

Outcome criterion_sandwich() {
    SandwichContext ctx;
    const SandwichResult sw = run_sandwich(ctx.domain, ctx.grid, 2, {4, 10, 100}, ctx.pairs, 4);
    int violations = 0;
    for (const auto& row : sw.rows) violations += row.pass ? 0 : 1;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "%zu rows (50 pairs x 3 beta), %d violations; reach=%.4f, K=%.4f, h=%.4f",
                  sw.rows.size(), violations, sw.reach.r, sw.K, sw.h);
    return {sw.all_pass && sw.rows.size() == 150, buf};
}

Outcome criterion_cor410iii() {
    SandwichContext ctx;
    const Reach reach = estimate_reach(ctx.domain, 2048, 1e-4 * ctx.domain.diameter());
    const auto rows = run_cor410iii(ctx.solver, reach, ctx.pairs);
    int violations = 0;
    for (const auto& r : rows) violations += r.pass ? 0 : 1;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%zu pairs with d_g < 2r, %d violations (r=%.4f)", rows.size(),
                  violations, reach.r);
    return {violations == 0 && !rows.empty(), buf};
}

Outcome criterion_reach() {
    const Reach disc = estimate_reach(Domain::disc(1.0), 1024, 1e-4);
    const Reach disc2 = estimate_reach(Domain::disc(2.5), 1024, 2.5e-4);
    const Reach annulus = estimate_reach(Domain::annulus(1, 2), 1024, 1e-4);
    const bool ok = std::abs(disc.r - 1.0) <= 1e-3 && std::abs(disc2.r - 2.5) <= 2.5e-3 &&
                    std::abs(annulus.r - 0.5) <= 5e-3;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "disc(1): %.5f, disc(2.5): %.5f, annulus(1,2): %.5f", disc.r,
                  disc2.r, annulus.r);
    return {ok, buf};
}

Outcome criterion_interval_kernel() {
    const Domain iv = Domain::interval(0, kPi);
    const GridDiscretization grid(iv, kPi / 200);
    const SpectralHeatKernel spec = spectral_decompose(assemble_polyharmonic(grid, 1), grid, 1);
    const int mid = 99;  // x = pi/2
    const double value = spec.value(1.0, mid, mid);
    const double oracle = oracles::dirichlet_interval_kernel(1.0, kPi / 2, kPi / 2, kPi);
    const double rel = std::abs(value - oracle) / oracle;

    double semigroup_err = 0.0;
    for (int xi : {20, 99, 150}) {
        for (int yj : {40, 120}) {
            double conv = 0;
            for (int z = 0; z < spec.size(); ++z)
                conv += spec.value(0.07, xi, z) * spec.value(0.13, z, yj) * grid.spacing();
            semigroup_err = std::max(semigroup_err, std::abs(conv - spec.value(0.2, xi, yj)));
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "K(1,pi/2,pi/2)=%.6f vs series %.6f (rel %.2e, tol 1%%); semigroup err %.2e "
                  "(tol 1e-8)",
                  value, oracle, rel, semigroup_err);
    return {rel <= 0.01 && semigroup_err <= 1e-8, buf};
}

Outcome criterion_on_diagonal_band() {
    const Domain iv = Domain::interval(0, 1);
    const double h = 1.0 / 200;
    const GridDiscretization grid(iv, h);
    const SpectralHeatKernel spec = spectral_decompose(assemble_polyharmonic(grid, 2), grid, 2);
    const double c_stencil = 16.0;  // max symbol factor of the squared stencil
    const double t_lo = 10 * c_stencil * std::pow(h, 4);
    const double t_hi = 0.01;
    double band_lo = 1e300, band_hi = 0, band_end = t_lo;
    double peak = 0;
    for (int i = 0; i < 40; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, i / 39.0);
        const double v = spec.max_on_diagonal(t) * std::pow(t, 0.25);
        band_lo = std::min(band_lo, v);
        band_hi = std::max(band_hi, v);
        peak = std::max(peak, v);
        if (v >= peak / 2) band_end = t;
    }
    const double factor = band_hi / band_lo;
    char buf[240];
    std::snprintf(buf, sizeof(buf),
                  "sup_x K t^{1/4} varies by %.1fx over [%.2e, %.2e] (tol 2x); factor-2 band "
                  "holds to t=%.2e; lambda_1=%.1f so exp(-lambda_1*0.01)=%.1e",
                  factor, t_lo, t_hi, band_end, spec.eigenvalues()[0],
                  std::exp(-spec.eigenvalues()[0] * 0.01));
    return {factor < 2.0, buf};
}

Outcome criterion_bound_contrast() {
    const Domain domain = Domain::horseshoe(1, 2, 0.1);
    const GridDiscretization grid(domain, domain.diameter() / 60);
    const ContrastResult c = run_bound_contrast(domain, grid, 4, 0.05);
    const bool stated = c.c1_euclid > 10.0 * c.c1_riemann;
    char buf[280];
    std::snprintf(buf, sizeof(buf),
                  "fitted c1_euclid=%.3e, c1_riemann=%.3e (stated: euclid > 10x riemann); "
                  "supplementary bound-overshoot at tips: euclid %.3e vs riemann %.3e "
                  "(ratio %.1f)",
                  c.c1_euclid, c.c1_riemann, c.overshoot_euclid, c.overshoot_riemann,
                  c.overshoot_euclid / c.overshoot_riemann);
    return {stated, buf};
}

Outcome criterion_conequiv() {
    bool ok = true;
    // pinned spot values
    ok = ok && std::abs(growth_rate_from_threshold(0.25, 0.05, 1.0, 1) - 1.2) <= 1e-12;
    ok = ok && std::abs(threshold_from_growth_rate(2.0, 0.05, 1) - 0.15811388300841897) <= 1e-12;
    for (int m : {1, 2}) {
        const double k = 1.7, eps = 0.21;
        const double T = threshold_from_growth_rate(k, eps, m);
        const double c2 = 0.4, T2 = 0.8;
        const double k2 = growth_rate_from_threshold(c2, eps, T2, m);
        for (int i = 1; i <= 50; ++i) {
            for (int j = 1; j <= 50; ++j) {
                const double d = 0.1 * i;
                const double gamma = 2.0 * m / (2 * m - 1.0);
                {
                    // backward: k t <= eps d^gamma t^{-1/(2m-1)} whenever t/d <= T
                    const double t = T * d * j / 50.0;
                    const double rhs = eps * std::pow(d, gamma) * std::pow(t, -1.0 / (2 * m - 1.0));
                    ok = ok && k * t <= rhs * (1 + 1e-12);
                }
                {
                    // forward: (c2-eps) d^gamma t^{-1/(2m-1)} <= (k2-1) t for t/d >= T2
                    const double t = T2 * d * (1.0 + j / 10.0);
                    const double lhs =
                        (c2 - eps) * std::pow(d, gamma) * std::pow(t, -1.0 / (2 * m - 1.0));
                    ok = ok && lhs <= (k2 - 1) * t * (1 + 1e-12);
                }
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "formulas and defining inequalities exact on 50x50 grids");
    return {ok, buf};
}

Outcome criterion_mollifier() {
    const MollifierKernel coarse = make_mollifier(2, 2, 64);
    const MollifierKernel fine = make_mollifier(2, 2, 160);
    const double consistency = std::abs(coarse.K - fine.K) / fine.K;
    const bool infimum_check = fine.K >= 4.0 - 1e-3;
    char buf[220];
    std::snprintf(buf, sizeof(buf),
                  "computed K_{2,2}=%.7f (stated lower bound 4 - 1e-3: %s); refinement "
                  "self-consistency %.2e (tol 1e-6)",
                  fine.K, infimum_check ? "holds" : "VIOLATED", consistency);
    return {infimum_check && consistency <= 1e-6, buf};
}

Outcome criterion_twisted() {
    const Domain square = Domain::square(1.0);
    const GridDiscretization grid(square, 1.0 / 41);
    const SpectralHeatKernel spec = spectral_decompose(assemble_polyharmonic(grid, 1), grid, 1);
    std::vector<double> ramp(grid.size());
    for (int i = 0; i < grid.size(); ++i)
        ramp[i] = std::clamp(grid.node(i).p.x, -0.2, 0.2);
    const TwistedScanResult r = run_twisted_scan(spec, ramp, {0.5, 1.0, 2.0});
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "scan over {0.5,1,2}^3: norm <= exp[k(1+a^2+b^2)t] with k=%.4f "
                  "(exponent-4 variant: k=%.4f)",
                  r.fitted_k_2m, r.fitted_k_4);
    return {r.finite && r.fitted_k_2m < 100.0, buf};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "sharp constants sigma_m", criterion_sigma},
        {2, "free Gaussian m=1 reproduction and decay fit", criterion_free_gaussian_m1},
        {3, "free kernel m=2 sharpness fit", criterion_free_sharpness_m2},
        {4, "metric sandwich on the horseshoe", criterion_sandwich},
        {5, "Euclidean vs geodesic short-distance comparison", criterion_cor410iii},
        {6, "reach oracle on disc and annulus", criterion_reach},
        {7, "discrete interval heat kernel vs sine series", criterion_interval_kernel},
        {8, "on-diagonal t^{-1/4} band for the clamped bilaplacian", criterion_on_diagonal_band},
        {9, "Euclidean vs Riemannian bound contrast at the tips", criterion_bound_contrast},
        {10, "threshold/growth-rate transformations", criterion_conequiv},
        {11, "mollifier constant table", criterion_mollifier},
        {12, "twisted semigroup growth scan", criterion_twisted},
    };
    return list;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }
    int failures = 0;
    for (const auto& c : criteria()) {
        if (only != 0 && c.id != only) continue;
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%2d] %s %s: %s\n", c.id, outcome.pass ? "PASS" : "FAIL", c.name,
                    outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
