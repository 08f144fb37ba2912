#include "heatbound/bounds.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace heatbound {

namespace {
constexpr double kPi = 3.14159265358979323846;

void gauss_legendre24(std::vector<long double>& nodes, std::vector<long double>& weights) {
    static std::vector<long double> xs, ws;
    if (xs.empty()) {
        const int n = 24;
        xs.resize(n);
        ws.resize(n);
        for (int i = 0; i < n; ++i) {
            long double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            long double dp = 0;
            for (int it = 0; it < 100; ++it) {
                long double p0 = 1.0L, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0L);
                const long double dx = p1 / dp;
                x -= dx;
                if (std::abs(static_cast<double>(dx)) < 1e-17) break;
            }
            xs[i] = x;
            ws[i] = 2.0L / ((1.0L - x * x) * dp * dp);
        }
    }
    nodes = xs;
    weights = ws;
}

double weighted_ratio(const KernelSample& s, const BoundParameters& p, double c2) {
    const double w = std::pow(s.d, p.distance_exponent()) * std::pow(s.t, p.time_exponent());
    return std::abs(s.K) * std::pow(s.t, static_cast<double>(p.N) / (2.0 * p.m)) *
           std::exp(c2 * w - p.k * s.t);
}

double sample_w(const KernelSample& s, const BoundParameters& p) {
    return std::pow(s.d, p.distance_exponent()) * std::pow(s.t, p.time_exponent());
}

}  // namespace

void BoundParameters::validate_for_kernel() const {
    if (!(c1 > 0 && c2 > 0)) throw std::invalid_argument("bound needs c1, c2 > 0");
    if (m < 1) throw std::invalid_argument("bound needs m >= 1");
    if (!(N < 2 * m)) throw std::invalid_argument("kernel bounds need N < 2m");
}

double sharp_decay_constant(int m) {
    if (m < 1) throw std::invalid_argument("sharp_decay_constant needs m >= 1");
    const long double mm = static_cast<long double>(m);
    const long double value =
        (2 * mm - 1) * std::pow(2 * mm, -2 * mm / (2 * mm - 1)) * std::sin(kPi / (4 * mm - 2));
    return static_cast<double>(value);
}

double gaussian_bound_rhs(const BoundParameters& p, double d, double t,
                          bool metric_exponent_active) {
    if (!(t > 0)) throw std::invalid_argument("gaussian_bound_rhs needs t > 0");
    if (d < 0) throw std::invalid_argument("gaussian_bound_rhs needs d >= 0");
    double exponent = p.k * t;
    if (metric_exponent_active && d > 0)
        exponent -= p.c2 * std::pow(d, p.distance_exponent()) * std::pow(t, p.time_exponent());
    return p.c1 * std::pow(t, -static_cast<double>(p.N) / (2.0 * p.m)) * std::exp(exponent);
}

namespace {

double free_kernel_raw(int m, double t, double d) {
    std::vector<long double> xs, ws;
    gauss_legendre24(xs, ws);
    const double cutoff = std::pow(std::log(1e18) / t, 1.0 / (2.0 * m));
    const double width = std::min(cutoff / 8.0, 1.2 / std::max(d, 1e-9));
    const int panels = static_cast<int>(std::ceil(cutoff / width));
    long double acc = 0.0L;
    for (int p = 0; p < panels; ++p) {
        const long double a = cutoff * static_cast<long double>(p) / panels;
        const long double b = cutoff * static_cast<long double>(p + 1) / panels;
        long double panel = 0.0L;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const long double x = 0.5L * (b - a) * xs[i] + 0.5L * (a + b);
            panel += 0.5L * (b - a) * ws[i] *
                     std::exp(-std::pow(x, 2.0L * m) * static_cast<long double>(t)) *
                     std::cos(x * static_cast<long double>(d));
        }
        acc += panel;
    }
    return static_cast<double>(acc / kPi);
}

}  // namespace

double free_space_kernel(int m, double t, double d) {
    if (m < 1) throw std::invalid_argument("free_space_kernel needs m >= 1");
    if (!(t > 0)) throw std::invalid_argument("free_space_kernel needs t > 0");
    d = std::abs(d);
    const double value = free_kernel_raw(m, t, d);
    if (d > 0 && std::abs(value) < 1e-13 * free_kernel_raw(m, t, 0.0))
        throw BudgetError("amplitude below quadrature floor");
    return value;
}

double fit_min_c1(const std::vector<KernelSample>& samples, const BoundParameters& p,
                  const KernelSample** argmax) {
    if (samples.empty()) throw std::invalid_argument("fit_min_c1 needs samples");
    double best = -1.0;
    const KernelSample* who = nullptr;
    for (const auto& s : samples) {
        const double r = weighted_ratio(s, p, p.c2);
        if (r > best) {
            best = r;
            who = &s;
        }
    }
    if (argmax) *argmax = who;
    return best;
}

double fit_c2_bisection(const std::vector<KernelSample>& samples, const BoundParameters& p) {
    if (samples.size() < 2) throw std::invalid_argument("fit_c2_bisection needs >= 2 samples");
    double w_min = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) w_min = std::min(w_min, sample_w(s, p));
    auto peaks_at_left = [&](double c2) {
        double best = -std::numeric_limits<double>::infinity();
        double best_w = 0;
        for (const auto& s : samples) {
            const double r = weighted_ratio(s, p, c2);
            if (r > best) {
                best = r;
                best_w = sample_w(s, p);
            }
        }
        return best_w <= w_min + 1e-9 * (1.0 + std::abs(w_min));
    };
    double lo = 0.0, hi = 16.0;
    if (!peaks_at_left(lo)) return 0.0;
    if (peaks_at_left(hi)) return hi;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (peaks_at_left(mid) ? lo : hi) = mid;
    }
    return lo;
}

EnvelopeFit fit_decay_envelope(const std::vector<KernelSample>& samples,
                               const BoundParameters& p) {
    // sort by w, pick strict local maxima of |K| (the oscillation envelope)
    std::vector<std::pair<double, double>> pts;  // (w, |K| weighted by t power and e^{-kt})
    for (const auto& s : samples)
        pts.push_back({sample_w(s, p), weighted_ratio(s, p, 0.0)});
    std::sort(pts.begin(), pts.end());
    std::vector<std::pair<double, double>> env;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool up = i == 0 || pts[i].second > pts[i - 1].second;
        const bool down = i + 1 == pts.size() || pts[i].second > pts[i + 1].second;
        if (i > 0 && i + 1 < pts.size() && up && down && pts[i].second > 0) env.push_back(pts[i]);
    }
    if (env.size() < 3) {
        // monotone data (no oscillation): fit on everything positive
        env.clear();
        for (const auto& q : pts)
            if (q.second > 0) env.push_back(q);
    }
    if (env.size() < 3) throw std::invalid_argument("envelope fit needs >= 3 usable points");

    Eigen::MatrixXd A(env.size(), 3);
    Eigen::VectorXd b(env.size());
    for (std::size_t i = 0; i < env.size(); ++i) {
        A(i, 0) = env[i].first;
        A(i, 1) = std::log(env[i].first);
        A(i, 2) = 1.0;
        b(i) = -std::log(env[i].second);
    }
    const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);
    EnvelopeFit fit;
    fit.c2 = sol[0];
    fit.power = sol[1];
    fit.constant = sol[2];
    fit.points_used = static_cast<int>(env.size());
    return fit;
}

BoundReport verify_gaussian_bound(const std::vector<KernelSample>& samples,
                                  const BoundParameters& p) {
    if (samples.empty()) throw std::invalid_argument("verify_gaussian_bound needs samples");
    BoundReport report;
    report.samples_checked = static_cast<int>(samples.size());
    const KernelSample* argmax = nullptr;
    report.max_ratio = fit_min_c1(samples, p, &argmax);
    report.fitted_c1 = report.max_ratio;
    report.pass = report.max_ratio <= p.c1;
    if (!report.pass && argmax) report.violating_sample = *argmax;
    report.fitted_c2 = samples.size() >= 2 ? fit_c2_bisection(samples, p) : 0.0;
    return report;
}

nlohmann::json BoundReport::to_json(const std::string& bound_name, double k, double window_lo,
                                    double window_hi) const {
    nlohmann::json j;
    j["bound"] = bound_name;
    j["fitted_c2"] = fitted_c2;
    j["fitted_c1"] = fitted_c1;
    j["k"] = k;
    j["samples"] = samples_checked;
    j["max_ratio"] = max_ratio;
    j["window"] = {window_lo, window_hi};
    return j;
}

double growth_rate_from_threshold(double c2, double epsilon, double T, int m) {
    if (!(epsilon > 0 && epsilon < c2))
        throw std::invalid_argument("growth_rate_from_threshold needs 0 < epsilon < c2");
    if (!(T > 0)) throw std::invalid_argument("growth_rate_from_threshold needs T > 0");
    return (c2 - epsilon) * std::pow(T, -2.0 * m / (2.0 * m - 1.0)) + 1.0;
}

double threshold_from_growth_rate(double k, double epsilon, int m) {
    if (!(k > 0 && epsilon > 0))
        throw std::invalid_argument("threshold_from_growth_rate needs k, epsilon > 0");
    return std::pow(epsilon / k, (2.0 * m - 1.0) / (2.0 * m));
}

}  // namespace heatbound
