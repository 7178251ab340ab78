#include "risfade/validation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "risfade/random.hpp"
#include "risfade/specfun.hpp"

namespace risfade {
namespace validation {

using fading::AlphaMuParams;
using fading::KappaMuParams;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return g;
}

IdentityCheck finish(std::string name, double max_dev, double tol) {
    return {std::move(name), max_dev <= tol, max_dev, tol};
}

// Max |impl - reference| over a grid; NaN poisons the result.
template <class Impl, class Ref>
double max_abs_gap(const std::vector<double>& grid, Impl impl, Ref ref) {
    double worst = 0.0;
    for (double x : grid) {
        const double gap = std::fabs(impl(x) - ref(x));
        if (std::isnan(gap)) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, gap);
    }
    return worst;
}

std::vector<double> draw_powers(const fading::FadingParams& p, std::size_t n, std::uint64_t seed,
                                std::uint32_t tag) {
    RandomStream rng(seed, tag, 0, 0);
    std::vector<double> out(n);
    for (auto& v : out) {
        const double r = fading::sample_envelope(p, rng);
        v = r * r;
    }
    return out;
}

}  // namespace

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_threshold(std::size_t n) { return 1.95 / std::sqrt(static_cast<double>(n)); }

std::vector<IdentityCheck> run_identity_suite(const SuiteHooks& hooks, const SuiteOptions& options) {
    using specfun::reg_lower_incomplete_gamma;
    std::vector<IdentityCheck> checks;
    const auto grid = log_grid(0.01, 20.0, 60);
    const std::vector<double> shapes = {0.5, 1.0, 2.0, 3.7};

    // Gamma limits of both families.
    {
        double km_worst = 0.0;
        double am_worst = 0.0;
        for (double m : shapes) {
            for (double xbar : {1.0, 2.5}) {
                const auto gamma_cdf = [m, xbar](double y) { return reg_lower_incomplete_gamma(m, m * y / xbar); };
                km_worst = std::max(km_worst, max_abs_gap(grid, [&](double y) {
                    return hooks.km_cdf(KappaMuParams{0.0, m, xbar}, y);
                }, gamma_cdf));
                am_worst = std::max(am_worst, max_abs_gap(grid, [&](double y) {
                    return hooks.am_cdf(AlphaMuParams{2.0, m, std::sqrt(xbar)}, y);
                }, gamma_cdf));
            }
        }
        checks.push_back(finish("kappa_mu(k=0,mu=m) == gamma(m) power cdf", km_worst, 1e-10));
        checks.push_back(finish("alpha_mu(a=2,mu=m) == gamma(m) power cdf", am_worst, 1e-12));
    }

    // alpha-mu presets against their classical envelope cdfs.
    const auto envelope_check = [&](fading::PresetName name, auto classical, double tol) {
        const auto pr = fading::preset(name, fading::Family::alpha_mu);
        const auto& p = std::get<AlphaMuParams>(pr.params);
        const auto rgrid = log_grid(0.01, 4.0, 60);
        const double worst = max_abs_gap(rgrid, [&](double r) { return hooks.am_cdf(p, r * r); },
                                         [&](double r) { return classical(r, p.omega); });
        checks.push_back(finish("alpha_mu preset " + std::string(fading::to_string(name)) +
                                    " == classical envelope cdf",
                                worst, tol));
    };
    envelope_check(fading::PresetName::exponential, [](double r, double om) { return -std::expm1(-r / om); }, 1e-12);
    envelope_check(fading::PresetName::weibull, [](double r, double om) { return -std::expm1(-std::pow(r / om, 3.0)); }, 1e-12);
    envelope_check(fading::PresetName::nakagami_m, [](double r, double om) {
        const double t = 2.0 * r * r / (om * om);
        return 1.0 - std::exp(-t) * (1.0 + t);
    }, 1e-12);
    envelope_check(fading::PresetName::rayleigh, [](double r, double om) { return -std::expm1(-r * r / (om * om)); }, 1e-12);
    envelope_check(fading::PresetName::one_sided_gaussian, [](double r, double om) {
        return std::erf(r / (om * std::sqrt(2.0)));
    }, 1e-12);

    // kappa-mu presets against classical power cdfs.
    const auto power_check = [&](fading::PresetName name, auto classical, double tol) {
        const auto pr = fading::preset(name, fading::Family::kappa_mu);
        const auto& p = std::get<KappaMuParams>(pr.params);
        const double worst = max_abs_gap(grid, [&](double y) { return hooks.km_cdf(p, y); },
                                         [&](double y) { return classical(y, p.mean_power); });
        checks.push_back(finish("kappa_mu preset " + std::string(fading::to_string(name)) +
                                    " == classical power cdf",
                                worst, tol));
    };
    power_check(fading::PresetName::nakagami_m, [](double y, double xb) {
        const double t = 2.0 * y / xb;
        return 1.0 - std::exp(-t) * (1.0 + t);
    }, 1e-10);
    power_check(fading::PresetName::rayleigh, [](double y, double xb) { return -std::expm1(-y / xb); }, 1e-10);
    power_check(fading::PresetName::one_sided_gaussian, [](double y, double xb) {
        return std::erf(std::sqrt(y / (2.0 * xb)));
    }, 1e-10);
    {
        // Rice with K = kappa: classical power pdf built on the standard-library I0.
        const auto pr = fading::preset(fading::PresetName::rice, fading::Family::kappa_mu);
        const auto& p = std::get<KappaMuParams>(pr.params);
        const double k = p.kappa;
        const double om = p.mean_power;
        const auto rice_pdf = [k, om](double w) {
            return (k + 1.0) / om * std::exp(-k - (k + 1.0) * w / om) *
                   std::cyl_bessel_i(0.0, 2.0 * std::sqrt(k * (k + 1.0) * w / om));
        };
        double pdf_worst = 0.0;
        for (double w : grid) {
            pdf_worst = std::max(pdf_worst, std::fabs(fading::km_power_pdf(p, w) / rice_pdf(w) - 1.0));
        }
        checks.push_back(finish("kappa_mu preset rice pdf == classical Rice power pdf (relative)", pdf_worst, 1e-10));
        double cdf_worst = 0.0;
        const specfun::QuadratureSpec tight{1e-13, 1e-12, 2000};
        for (double y : log_grid(0.05, 10.0, 12)) {
            const double ref = specfun::integrate(rice_pdf, 0.0, y, tight);
            cdf_worst = std::max(cdf_worst, std::fabs(hooks.km_cdf(p, y) - ref));
        }
        checks.push_back(finish("kappa_mu preset rice cdf == integral of classical Rice pdf", cdf_worst, 1e-9));
    }

    // Sampler goodness of fit.
    const std::size_t n = options.ks_samples;
    const double ks_tol = ks_threshold(n);
    std::uint32_t tag = 0;
    const auto ks_check = [&](const std::string& label, const fading::FadingParams& sampler,
                              const std::function<double(double)>& cdf) {
        const double d = ks_statistic(draw_powers(sampler, n, options.seed, tag++), cdf);
        checks.push_back(finish("KS " + label, d, ks_tol));
    };
    for (auto name : {fading::PresetName::exponential, fading::PresetName::weibull, fading::PresetName::nakagami_m,
                      fading::PresetName::rayleigh, fading::PresetName::one_sided_gaussian}) {
        const auto pr = fading::preset(name, fading::Family::alpha_mu);
        const auto p = std::get<AlphaMuParams>(pr.params);
        ks_check("alpha_mu preset " + std::string(fading::to_string(name)), p,
                 [&hooks, p](double y) { return hooks.am_cdf(p, y); });
    }
    for (auto name : {fading::PresetName::rice, fading::PresetName::nakagami_m, fading::PresetName::rayleigh,
                      fading::PresetName::one_sided_gaussian}) {
        const auto pr = fading::preset(name, fading::Family::kappa_mu);
        const auto p = std::get<KappaMuParams>(pr.params);
        ks_check("kappa_mu preset " + std::string(fading::to_string(name)), p,
                 [&hooks, p](double y) { return hooks.km_cdf(p, y); });
    }
    {
        RandomStream pick(options.seed, 0xFFFF, 0, 1);
        const auto between = [&pick](double lo, double hi) { return lo + (hi - lo) * pick.uniform(); };
        for (int i = 0; i < 5; ++i) {
            const AlphaMuParams p{between(0.5, 4.0), between(0.5, 4.0), between(0.5, 2.0)};
            ks_check("alpha_mu random " + fading::describe(p), p, [&hooks, p](double y) { return hooks.am_cdf(p, y); });
        }
        for (int i = 0; i < 5; ++i) {
            const KappaMuParams p{between(0.0, 5.0), between(0.5, 4.0), between(0.5, 3.0)};
            ks_check("kappa_mu random " + fading::describe(p), p, [&hooks, p](double y) { return hooks.km_cdf(p, y); });
        }
    }
    {
        const AlphaMuParams am{2.0, 2.0, 1.0};
        ks_check("nakagami(m=2) sampler vs alpha_mu(2,2) cdf", fading::NakagamiParams{2.0, 1.0},
                 [&hooks, am](double y) { return hooks.am_cdf(am, y); });
    }

    // Laplace transforms: closed form against quadrature, and across families.
    {
        const std::vector<double> s_grid = {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
        const specfun::QuadratureSpec tight{1e-14, 1e-12, 4000};
        double worst = 0.0;
        for (const KappaMuParams& p : {KappaMuParams{2.0, 1.5, 1.0}, KappaMuParams{0.5, 0.8, 2.0},
                                       KappaMuParams{4.0, 3.0, 0.7}, KappaMuParams{0.0, 2.0, 1.0}}) {
            for (double s : s_grid) {
                const double numeric = specfun::integrate(
                    [&](double x) { return x == 0.0 ? 0.0 : std::exp(-s * x) * fading::km_power_pdf(p, x); }, 0.0,
                    std::numeric_limits<double>::infinity(), tight);
                worst = std::max(worst, std::fabs(numeric / fading::km_mgf(p, s) - 1.0));
            }
        }
        checks.push_back(finish("kappa_mu MGF closed form == Laplace transform of pdf (relative)", worst, 1e-8));

        double cross = 0.0;
        for (double m : shapes) {
            for (double s : s_grid) {
                cross = std::max(cross, std::fabs(fading::am_mgf(AlphaMuParams{2.0, m, 1.0}, s, tight) -
                                                  fading::km_mgf(KappaMuParams{0.0, m, 1.0}, s)));
            }
        }
        checks.push_back(finish("alpha_mu(2,m) MGF == kappa_mu(0,m) MGF", cross, 1e-7));
    }
    return checks;
}

bool print_report(std::ostream& os, const std::vector<IdentityCheck>& checks) {
    bool all = true;
    for (const auto& c : checks) {
        all = all && c.passed;
        os << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  max_dev=" << std::scientific
           << std::setprecision(3) << c.max_deviation << "  tol=" << c.tolerance << std::defaultfloat << '\n';
    }
    os << (all ? "all identities PASS" : "identity suite FAILED") << '\n';
    return all;
}

}  // namespace validation
}  // namespace risfade
