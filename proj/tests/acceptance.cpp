// Acceptance run: one PASS/FAIL line per criterion, each timed against its
// runtime budget. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "risfade/fading.hpp"
#include "risfade/montecarlo.hpp"
#include "risfade/specfun.hpp"
#include "risfade/sysmodel.hpp"
#include "risfade/validation.hpp"

using namespace risfade;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double budget_s;
    std::function<Outcome()> run;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::vector<double> y_grid() {
    std::vector<double> ys;
    for (int i = 0; i <= 400; ++i) ys.push_back(0.01 * std::pow(2000.0, i / 400.0));  // 0.01 .. 20
    return ys;
}

Outcome gamma_identity() {
    double km_worst = 0.0, am_worst = 0.0;
    for (double m : {0.5, 1.0, 2.0, 3.7}) {
        for (double xbar : {0.5, 1.0, 3.0}) {
            for (double y : y_grid()) {
                const double g = specfun::reg_lower_incomplete_gamma(m, m * y / xbar);
                km_worst = std::max(km_worst, std::fabs(fading::km_power_cdf({0.0, m, xbar}, y) - g));
                am_worst = std::max(am_worst, std::fabs(fading::am_power_cdf({2.0, m, std::sqrt(xbar)}, y) - g));
            }
        }
    }
    return {km_worst <= 1e-10 && am_worst <= 1e-10,
            fmt("max |km - P| = %.2e, max |am - P| = %.2e (tol 1e-10)", km_worst, am_worst)};
}

double binomial_se(const montecarlo::OutageResult& r) {
    return std::sqrt(r.op_estimate * (1.0 - r.op_estimate) / static_cast<double>(r.trials));
}

Outcome nakagami_replication() {
    const std::vector<fading::FadingParams> laws = {fading::NakagamiParams{2.0, 1.0},
                                                    fading::KappaMuParams{0.0, 2.0, 1.0},
                                                    fading::AlphaMuParams{2.0, 2.0, 1.0}};
    std::vector<std::vector<montecarlo::OutageResult>> curves;
    montecarlo::SweepSpec spec;  // 0..40 dBm, 2e5 trials, default seed, RIS-NOMA at U1
    for (const auto& law : laws) {
        sysmodel::SystemConfig cfg;
        cfg.links.direct_u1 = law;
        curves.push_back(montecarlo::run_sweep(cfg, spec));
    }
    double worst_ratio = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < spec.power_points_dbm.size(); ++i) {
        for (std::size_t a = 0; a < curves.size(); ++a) {
            for (std::size_t b = a + 1; b < curves.size(); ++b) {
                const double diff = std::fabs(curves[a][i].op_estimate - curves[b][i].op_estimate);
                const double se = std::hypot(binomial_se(curves[a][i]), binomial_se(curves[b][i]));
                if (diff > 2.0 * se) ok = false;
                if (se > 0.0) worst_ratio = std::max(worst_ratio, diff / se);
            }
        }
    }
    return {ok, fmt("common random numbers, %g power points x 3 curves, max |diff| / combined SE = %.3f "
                    "(limit 2); OP at 0 dBm = %.4g",
                    static_cast<double>(spec.power_points_dbm.size()), worst_ratio, curves[0][0].op_estimate)};
}

Outcome ris_dominance() {
    const sysmodel::SystemConfig cfg;
    struct Run {
        std::uint64_t seed, trials;
    };
    const std::vector<Run> runs = {{montecarlo::kDefaultSeed, 200'000}, {1, 50'000}, {2, 50'000}, {3, 50'000}};
    bool ok = true;
    std::size_t min_positive = ~std::size_t{0}, points = 0;
    double smallest_diff = kInf;
    for (const auto& run : runs) {
        montecarlo::SweepSpec spec;
        spec.master_seed = run.seed;
        spec.trials_per_point = run.trials;
        const auto paired = montecarlo::compare_schemes(cfg, spec);
        std::size_t positive = 0;
        for (const auto& pt : paired) {
            if (pt.difference < 0.0) ok = false;
            if (pt.difference > 0.0) ++positive;
            smallest_diff = std::min(smallest_diff, pt.difference);
        }
        points = paired.size();
        if (2 * positive < paired.size()) ok = false;
        min_positive = std::min(min_positive, positive);
    }
    return {ok, fmt("4 seeds, N=16: min paired difference = %.3g; strictly positive at >= %g of %g points",
                    smallest_diff, static_cast<double>(min_positive), static_cast<double>(points))};
}

Outcome sampler_fit() {
    const std::size_t n = 100'000;
    std::vector<std::pair<std::string, fading::FadingParams>> cases;
    for (auto name : {fading::PresetName::exponential, fading::PresetName::weibull, fading::PresetName::nakagami_m,
                      fading::PresetName::rayleigh, fading::PresetName::one_sided_gaussian}) {
        cases.emplace_back(std::string(fading::to_string(name)), fading::preset(name, fading::Family::alpha_mu).params);
    }
    for (auto name : {fading::PresetName::rice, fading::PresetName::nakagami_m, fading::PresetName::rayleigh,
                      fading::PresetName::one_sided_gaussian}) {
        cases.emplace_back(std::string(fading::to_string(name)), fading::preset(name, fading::Family::kappa_mu).params);
    }
    RandomStream pick(404, 0, 0, 0);
    for (int i = 0; i < 5; ++i) {
        const fading::AlphaMuParams am{0.7 + 3.3 * pick.uniform(), 0.5 + 3.5 * pick.uniform(), 0.5 + pick.uniform()};
        const fading::KappaMuParams km{5.0 * pick.uniform(), 0.5 + 3.5 * pick.uniform(), 0.5 + pick.uniform()};
        cases.emplace_back("random", am);
        cases.emplace_back("random", km);
    }
    const double threshold = validation::ks_threshold(n);
    double worst = 0.0;
    int failures = 0;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto& p = cases[c].second;
        RandomStream rng(77, static_cast<std::uint32_t>(c), 0, 0);
        std::vector<double> w(n);
        for (auto& v : w) {
            const double r = fading::sample_envelope(p, rng);
            v = r * r;
        }
        const double d = validation::ks_statistic(std::move(w), [&p](double y) { return fading::power_cdf(p, y); });
        worst = std::max(worst, d);
        if (!(d < threshold)) ++failures;
    }
    return {failures == 0, fmt("%g distributions, n = 1e5, max KS = %.5f, threshold %.5f",
                               static_cast<double>(cases.size()), worst, threshold)};
}

Outcome mgf_cross_check() {
    const specfun::QuadratureSpec tight{1e-15, 1e-12, 4000};
    double km_worst = 0.0;
    for (const fading::KappaMuParams p : {fading::KappaMuParams{0.0, 1.0, 1.0}, fading::KappaMuParams{2.0, 1.5, 1.0},
                                          fading::KappaMuParams{1.0, 0.7, 2.0}, fading::KappaMuParams{6.0, 3.0, 0.5}}) {
        for (double s : {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            const double q = specfun::integrate(
                [&](double x) { return std::exp(-s * x) * fading::km_power_pdf(p, x); }, 0.0, kInf, tight);
            km_worst = std::max(km_worst, std::fabs(fading::km_mgf(p, s) / q - 1.0));
        }
    }
    double cross_worst = 0.0;
    for (double m : {0.5, 1.0, 2.0, 3.7}) {
        for (double s : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            cross_worst = std::max(cross_worst,
                                   std::fabs(fading::am_mgf({2.0, m, 1.0}, s) - fading::km_mgf({0.0, m, 1.0}, s)));
        }
    }
    return {km_worst <= 1e-8 && cross_worst <= 1e-7,
            fmt("closed form vs Laplace quadrature: max rel %.2e (tol 1e-8); alpha_mu(2,m) vs kappa_mu(0,m): "
                "max %.2e (tol 1e-7)",
                km_worst, cross_worst)};
}

Outcome rayleigh_closed_form() {
    sysmodel::SystemConfig cfg;
    cfg.links.direct_u1 = fading::NakagamiParams{1.0, 1.0};
    montecarlo::SweepSpec spec;
    spec.scheme = sysmodel::Scheme::conventional_noma;
    const auto curve = montecarlo::run_sweep(cfg, spec);
    int checked = 0, inside = 0;
    double worst_z = 0.0;
    for (const auto& r : curve) {
        sysmodel::SystemConfig at = cfg;
        at.tx_power_dbm = r.power_dbm;
        const auto exact = sysmodel::conventional_rayleigh_op(at);
        if (!exact) continue;
        ++checked;
        const auto ci = montecarlo::wilson_interval(r.outages, r.trials, 2.5758293035489004);
        if (ci.low <= *exact && *exact <= ci.high) ++inside;
        const double se = std::sqrt(*exact * (1.0 - *exact) / static_cast<double>(r.trials));
        if (se > 0.0) worst_z = std::max(worst_z, std::fabs(r.op_estimate - *exact) / se);
    }
    return {checked > 0 && inside == checked,
            fmt("closed form inside the 99%% Wilson interval at %g of %g points (max |z| = %.2f)",
                static_cast<double>(inside), static_cast<double>(checked), worst_z)};
}

Outcome special_function_spots() {
    double marcum = 0.0;
    for (int i = 0; i <= 10; ++i) {
        const double b = 0.5 * i;
        marcum = std::max(marcum, std::fabs(specfun::marcum_q(1.0, 0.0, b) - std::exp(-0.5 * b * b)));
    }
    double complement = 0.0;
    for (double a : {0.1, 0.5, 1.0, 2.5, 10.0, 75.0, 300.0}) {
        for (double x = 0.0; x < 3.0 * a + 40.0; x += 0.01 * (a + 1.0)) {
            complement = std::max(complement, std::fabs(specfun::reg_lower_incomplete_gamma(a, x) +
                                                        specfun::reg_upper_incomplete_gamma(a, x) - 1.0));
        }
    }
    double branch = 0.0;
    for (double nu : {-0.9, -0.5, 0.0, 0.5, 1.0, 2.3, 5.0, 9.0, 14.0}) {
        const double c = specfun::detail::bessel_crossover(nu);
        for (double f = 0.8; f <= 1.25; f += 0.025) {
            const double x = c * f;
            if (x > 700.0) continue;
            const double s = specfun::detail::bessel_i_scaled_series(nu, x);
            const double a = specfun::detail::bessel_i_scaled_asymptotic(nu, x);
            branch = std::max(branch, std::fabs(s / a - 1.0));
        }
    }
    return {marcum <= 1e-12 && complement <= 1e-12 && branch <= 1e-9,
            fmt("Q1(0,b) vs exp(-b^2/2): %.1e (tol 1e-12); |P+Q-1|: %.1e (tol 1e-12); I_nu branches: %.1e (tol 1e-9)",
                marcum, complement, branch)};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "gamma identity of kappa-mu(k=0) and alpha-mu(a=2) power cdfs", 10.0, gamma_identity},
        {2, "Nakagami(2), kappa-mu(0,2), alpha-mu(2,2) outage curves agree", 300.0, nakagami_replication},
        {3, "RIS-NOMA outage never above conventional NOMA (paired)", 300.0, ris_dominance},
        {4, "sampler goodness of fit", 60.0, sampler_fit},
        {5, "MGF closed form and cross-family checks", 10.0, mgf_cross_check},
        {6, "conventional NOMA Rayleigh closed-form outage", 120.0, rayleigh_closed_form},
        {7, "special-function spot suite", 10.0, special_function_spots},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.budget_s;
        const bool pass = o.passed && in_time;
        if (!pass) ++failed;
        std::printf("%s  [%d] %s: %s; %.1f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                    o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", exceeded");
        std::fflush(stdout);
    }
    std::printf("%s: %d of %zu criteria passed\n", failed == 0 ? "ACCEPTED" : "REJECTED",
                static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
