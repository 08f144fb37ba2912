#pragma once

#include <map>
#include <string>
#include <vector>

#include "heatbound/bounds.hpp"
#include "heatbound/metrics.hpp"
#include "heatbound/operators.hpp"

#include <json.hpp>

namespace heatbound {

struct RunOptions {
    std::string out_dir = ".";
    int threads = 1;
    bool verbose = false;
};

struct PairSpec {
    int count = 0;            // random pairs (requires seed)
    std::uint64_t seed = 0;
    bool has_seed = false;
    int close_pairs = 0;      // short-range pairs (lattice offsets 5..9)
    int tip_pairs = 0;        // horseshoe tip-to-tip pairs
    std::vector<std::array<Vec2, 2>> explicit_pairs;
};

// Random node pairs with d_g >= 4h, reproducible for a fixed seed.
std::vector<std::array<Vec2, 2>> sample_pairs(const Domain& domain, const GridDiscretization& grid,
                                              const GeodesicSolver& solver, const PairSpec& spec);

// ---------------------------------------------------------------------------
// Pipeline stages shared by the CLI and the acceptance suite.

struct SandwichRow {
    double beta = 0;
    Vec2 x, y;
    double d0 = 0, dg_lower = 0, dg_upper = 0, dmb_lower = 0;
    double sandwich_factor = 0;
    bool pass = false;
};

struct SandwichResult {
    Reach reach;
    double K = 0;
    double h = 0;
    std::vector<double> betas;
    std::vector<SandwichRow> rows;
    bool all_pass = true;
};

SandwichResult run_sandwich(const Domain& domain, const GridDiscretization& grid, int m,
                            const std::vector<double>& beta_multipliers,
                            const std::vector<std::array<Vec2, 2>>& pairs, int threads);

struct Cor410Row {
    Vec2 x, y;
    double d0 = 0, dg = 0, lower_bound = 0;
    bool pass = false;
};

// Corollary short-distance comparison |y-x| >= 2 r d_g / (2r + d_g) - tol on
// pairs with d_g < 2r.
std::vector<Cor410Row> run_cor410iii(const GeodesicSolver& solver, const Reach& reach,
                                     const std::vector<std::array<Vec2, 2>>& pairs);

struct SharpnessResult {
    double fitted_c2 = 0;
    double target = 0;
    double rel_err = 0;
    double kernel_check_value = 0;   // K(1,0,0) for m=2; max grid error for m=1
    bool pass = false;
    BoundReport report;
    std::vector<KernelSample> samples;
};

SharpnessResult run_sharpness(int m);

struct ContrastResult {
    double c1_euclid = 0;
    double c1_riemann = 0;
    // bound overestimate factors min_t rhs/|K| at the tip pairs when c1 is
    // anchored on near-diagonal samples (reported alongside the fit)
    double overshoot_euclid = 0;
    double overshoot_riemann = 0;
    double d_euclid = 0, d_geodesic = 0;
    int samples_kept = 0;
    BoundReport report_euclid, report_riemann;
};

ContrastResult run_bound_contrast(const Domain& domain, const GridDiscretization& grid,
                                  int tip_pairs, double delta);

struct TwistedScanResult {
    double fitted_k_2m = 0;   // exponent 1 + a^{2m} + b^{2m}
    double fitted_k_4 = 0;    // exponent 1 + a^4 + b^4
    std::vector<std::array<double, 4>> rows;  // alpha, beta, t, norm
    bool finite = false;
};

TwistedScanResult run_twisted_scan(const SpectralHeatKernel& spec, const std::vector<double>& phi,
                                   const std::vector<double>& levels);

// ---------------------------------------------------------------------------
// Scenario configs

struct Scenario {
    std::string name;
    nlohmann::json domain_spec;
    double h = 0;               // explicit spacing, or
    double resolution = 0;      // h = diameter / resolution
    int m = 2;
    std::vector<double> beta_multipliers = {4, 10, 100};
    PairSpec pairs;
    std::vector<std::string> checks;
    std::map<std::string, std::string> outputs;  // kind -> filename

    static Scenario from_json(const nlohmann::json& j);
    static Scenario from_file(const std::string& path);
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ScenarioResult {
    int exit_code = 0;
    std::vector<CheckResult> checks;
    std::vector<std::string> written_files;
};

ScenarioResult run_scenario(const Scenario& scenario, const RunOptions& options);

// Shape and bundled-scenario listing (stable order).
std::string catalog_text();
const std::map<std::string, std::string>& bundled_scenarios();

}  // namespace heatbound
