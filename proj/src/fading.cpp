#include "risfade/fading.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace risfade {
namespace fading {

using specfun::log_gamma;

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double gamma_limit_pdf(double mu, double mean, double x) {
    if (x == 0.0) {
        if (mu > 1.0) return 0.0;
        if (mu == 1.0) return 1.0 / mean;
        return std::numeric_limits<double>::infinity();
    }
    const double rate = mu / mean;
    return std::exp(mu * std::log(rate) + (mu - 1.0) * std::log(x) - rate * x - log_gamma(mu));
}

}  // namespace

void KappaMuParams::validate() const {
    require(kappa >= 0.0 && std::isfinite(kappa), "kappa-mu: kappa must be finite and >= 0");
    require(mu > 0.0 && std::isfinite(mu), "kappa-mu: mu must be finite and > 0");
    require(mean_power > 0.0 && std::isfinite(mean_power), "kappa-mu: mean_power must be > 0");
}

void AlphaMuParams::validate() const {
    require(alpha > 0.0 && std::isfinite(alpha), "alpha-mu: alpha must be finite and > 0");
    require(mu > 0.0 && std::isfinite(mu), "alpha-mu: mu must be finite and > 0");
    require(omega > 0.0 && std::isfinite(omega), "alpha-mu: omega must be > 0");
}

void NakagamiParams::validate() const {
    require(m >= 0.5 && std::isfinite(m), "nakagami: m must be finite and >= 0.5");
    require(omega > 0.0 && std::isfinite(omega), "nakagami: omega must be > 0");
}

std::string_view to_string(PresetName name) {
    switch (name) {
        case PresetName::exponential: return "exponential";
        case PresetName::weibull: return "weibull";
        case PresetName::nakagami_m: return "nakagami_m";
        case PresetName::rayleigh: return "rayleigh";
        case PresetName::one_sided_gaussian: return "one_sided_gaussian";
        case PresetName::rice: return "rice";
    }
    return "?";
}

std::string_view to_string(Family family) {
    return family == Family::alpha_mu ? "alpha_mu" : "kappa_mu";
}

PresetName parse_preset_name(std::string_view text) {
    for (auto name : {PresetName::exponential, PresetName::weibull, PresetName::nakagami_m,
                      PresetName::rayleigh, PresetName::one_sided_gaussian, PresetName::rice}) {
        if (to_string(name) == text) return name;
    }
    throw UnknownPreset("unknown distribution name '" + std::string(text) + "'");
}

Family parse_family(std::string_view text) {
    if (text == "alpha_mu") return Family::alpha_mu;
    if (text == "kappa_mu") return Family::kappa_mu;
    throw UnknownPreset("unknown family '" + std::string(text) + "'");
}

// --- kappa-mu ------------------------------------------------------------

double km_power_pdf(const KappaMuParams& p, double x) {
    p.validate();
    require(x >= 0.0, "km_power_pdf: x must be nonnegative");
    const double k = p.kappa;
    const double mu = p.mu;
    const double xbar = p.mean_power;
    if (k < kKappaZeroThreshold) return gamma_limit_pdf(mu, xbar, x);
    if (std::isinf(x)) return 0.0;

    if (x == 0.0) {
        if (mu > 1.0) return 0.0;
        if (mu < 1.0) return std::numeric_limits<double>::infinity();
        return (1.0 + k) * std::exp(-k) / xbar;
    }

    // exponent pieces -mu(1+k)x/xbar - mu k + z collapse to -(sqrt(mu(1+k)x/xbar) - sqrt(mu k))^2
    const double scaled = mu * (1.0 + k) * x / xbar;
    const double z = 2.0 * mu * std::sqrt(k * (1.0 + k) * x / xbar);
    const double gap = std::sqrt(scaled) - std::sqrt(mu * k);
    const double log_front = std::log(mu) + 0.5 * (mu + 1.0) * std::log1p(k) -
                             0.5 * (mu - 1.0) * std::log(k) - 0.5 * (mu + 1.0) * std::log(xbar) +
                             0.5 * (mu - 1.0) * std::log(x);
    const double bessel = specfun::bessel_i_scaled(mu - 1.0, z);
    return std::exp(log_front - gap * gap + std::log(bessel));
}

double km_power_cdf(const KappaMuParams& p, double y) {
    p.validate();
    require(y >= 0.0, "km_power_cdf: y must be nonnegative");
    if (y == 0.0) return 0.0;
    const double a = std::sqrt(2.0 * p.kappa * p.mu);
    const double b = std::sqrt(2.0 * p.mu * (1.0 + p.kappa) * y / p.mean_power);
    const double q = specfun::marcum_q(p.mu, a, b);
    if (q > 0.5) return specfun::marcum_p(p.mu, a, b);
    return 1.0 - q;
}

double km_mgf(const KappaMuParams& p, double s) {
    p.validate();
    require(s >= 0.0, "km_mgf: s must be nonnegative");
    const double base = p.mu * (1.0 + p.kappa);
    const double denom = base + s * p.mean_power;
    return std::pow(base / denom, p.mu) *
           std::exp(p.mu * p.mu * p.kappa * (1.0 + p.kappa) / denom - p.kappa * p.mu);
}

double km_sample_power(const KappaMuParams& p, RandomStream& rng) {
    const double u_gamma = rng.uniform();
    const double u_mix = rng.uniform();
    const long j = poisson_from_uniform(p.kappa * p.mu, u_mix);
    const double g = gamma_from_uniform(p.mu + static_cast<double>(j), u_gamma);
    return p.mean_power * g / (p.mu * (1.0 + p.kappa));
}

// --- alpha-mu ------------------------------------------------------------

double am_envelope_pdf(const AlphaMuParams& p, double x) {
    p.validate();
    require(x >= 0.0, "am_envelope_pdf: x must be nonnegative");
    const double am = p.alpha * p.mu;
    if (x == 0.0) {
        if (am > 1.0) return 0.0;
        if (am < 1.0) return std::numeric_limits<double>::infinity();
        return p.alpha * std::pow(p.mu, p.mu) / (std::exp(log_gamma(p.mu)) * p.omega);
    }
    if (std::isinf(x)) return 0.0;
    const double log_ratio = std::log(x / p.omega);
    return std::exp(std::log(p.alpha) + p.mu * std::log(p.mu) + (am - 1.0) * std::log(x) -
                    log_gamma(p.mu) - am * std::log(p.omega) - p.mu * std::exp(p.alpha * log_ratio));
}

double am_power_pdf(const AlphaMuParams& p, double w) {
    p.validate();
    require(w >= 0.0, "am_power_pdf: w must be nonnegative");
    const double half = 0.5 * p.alpha * p.mu;  // exponent of w is half - 1
    if (w == 0.0) {
        if (half > 1.0) return 0.0;
        if (half < 1.0) return std::numeric_limits<double>::infinity();
        return 0.5 * p.alpha * std::pow(p.mu, p.mu) / (std::exp(log_gamma(p.mu)) * p.omega * p.omega);
    }
    if (std::isinf(w)) return 0.0;
    const double log_ratio = std::log(w) - 2.0 * std::log(p.omega);
    return std::exp(std::log(0.5 * p.alpha) + p.mu * std::log(p.mu) + (half - 1.0) * std::log(w) -
                    log_gamma(p.mu) - 2.0 * half * std::log(p.omega) -
                    p.mu * std::exp(0.5 * p.alpha * log_ratio));
}

double am_power_cdf(const AlphaMuParams& p, double y) {
    p.validate();
    require(y >= 0.0, "am_power_cdf: y must be nonnegative");
    if (y == 0.0) return 0.0;
    const double arg = p.mu * std::pow(y / (p.omega * p.omega), 0.5 * p.alpha);
    return specfun::reg_lower_incomplete_gamma(p.mu, arg);
}

double am_envelope_cdf(const AlphaMuParams& p, double r) {
    require(r >= 0.0, "am_envelope_cdf: r must be nonnegative");
    return am_power_cdf(p, r * r);
}

double am_mgf(const AlphaMuParams& p, double s, const specfun::QuadratureSpec& spec) {
    p.validate();
    require(s >= 0.0, "am_mgf: s must be nonnegative");
    const auto integrand = [&](double w) {
        if (w == 0.0) return 0.0;  // integrable endpoint singularity when alpha mu < 2
        const double f = am_power_pdf(p, w);
        return f == 0.0 ? 0.0 : f * std::exp(-s * w);
    };
    // split at the mean power so the bulk of the mass sees finite-interval nodes
    const double split = p.omega * p.omega;
    return specfun::integrate(integrand, 0.0, split, spec) +
           specfun::integrate(integrand, split, std::numeric_limits<double>::infinity(), spec);
}

double am_sample_envelope(const AlphaMuParams& p, RandomStream& rng) {
    const double g = gamma_from_uniform(p.mu, rng.uniform());
    return p.omega * std::pow(g / p.mu, 1.0 / p.alpha);
}

double am_mean_power(const AlphaMuParams& p) {
    return p.omega * p.omega *
           std::exp(log_gamma(p.mu + 2.0 / p.alpha) - log_gamma(p.mu) - (2.0 / p.alpha) * std::log(p.mu));
}

// --- Nakagami-m ----------------------------------------------------------

double nakagami_sample_envelope(const NakagamiParams& p, RandomStream& rng) {
    const double g = gamma_from_uniform(p.m, rng.uniform());
    return std::sqrt(g * p.omega / p.m);
}

// --- generic -------------------------------------------------------------

DistributionPreset preset(PresetName name, Family family) {
    const auto unit_am = [](double alpha, double mu) {
        AlphaMuParams p{alpha, mu, 1.0};
        p.omega = 1.0 / std::sqrt(am_mean_power(p));
        return p;
    };
    if (family == Family::alpha_mu) {
        switch (name) {
            case PresetName::exponential: return {name, family, unit_am(1.0, 1.0)};
            case PresetName::weibull: return {name, family, unit_am(3.0, 1.0)};
            case PresetName::nakagami_m: return {name, family, unit_am(2.0, 2.0)};
            case PresetName::rayleigh: return {name, family, unit_am(2.0, 1.0)};
            case PresetName::one_sided_gaussian: return {name, family, unit_am(2.0, 0.5)};
            default: break;
        }
    } else {
        switch (name) {
            case PresetName::rice: return {name, family, KappaMuParams{1.0, 1.0, 1.0}};
            case PresetName::nakagami_m: return {name, family, KappaMuParams{0.0, 2.0, 1.0}};
            case PresetName::rayleigh: return {name, family, KappaMuParams{0.0, 1.0, 1.0}};
            case PresetName::one_sided_gaussian: return {name, family, KappaMuParams{0.0, 0.5, 1.0}};
            default: break;
        }
    }
    throw UnknownPreset(std::string(to_string(name)) + " is not a listed " +
                        std::string(to_string(family)) + " special case");
}

double mean_power(const FadingParams& p) {
    return std::visit(Overloaded{
                          [](const NakagamiParams& n) { return n.omega; },
                          [](const AlphaMuParams& a) { return am_mean_power(a); },
                          [](const KappaMuParams& k) { return k.mean_power; },
                      },
                      p);
}

FadingParams with_unit_mean_power(const FadingParams& p) {
    return std::visit(Overloaded{
                          [](NakagamiParams n) -> FadingParams {
                              n.omega = 1.0;
                              return n;
                          },
                          [](AlphaMuParams a) -> FadingParams {
                              a.omega = 1.0;
                              a.omega = 1.0 / std::sqrt(am_mean_power(a));
                              return a;
                          },
                          [](KappaMuParams k) -> FadingParams {
                              k.mean_power = 1.0;
                              return k;
                          },
                      },
                      p);
}

void validate(const FadingParams& p) {
    std::visit([](const auto& v) { v.validate(); }, p);
}

double power_cdf(const FadingParams& p, double y) {
    return std::visit(Overloaded{
                          [y](const NakagamiParams& n) {
                              require(y >= 0.0, "power_cdf: y must be nonnegative");
                              n.validate();
                              return specfun::reg_lower_incomplete_gamma(n.m, n.m * y / n.omega);
                          },
                          [y](const AlphaMuParams& a) { return am_power_cdf(a, y); },
                          [y](const KappaMuParams& k) { return km_power_cdf(k, y); },
                      },
                      p);
}

double power_pdf(const FadingParams& p, double y) {
    return std::visit(Overloaded{
                          [y](const NakagamiParams& n) {
                              require(y >= 0.0, "power_pdf: y must be nonnegative");
                              n.validate();
                              return gamma_limit_pdf(n.m, n.omega, y);
                          },
                          [y](const AlphaMuParams& a) { return am_power_pdf(a, y); },
                          [y](const KappaMuParams& k) { return km_power_pdf(k, y); },
                      },
                      p);
}

double sample_envelope(const FadingParams& p, RandomStream& rng) {
    return std::visit(Overloaded{
                          [&rng](const NakagamiParams& n) { return nakagami_sample_envelope(n, rng); },
                          [&rng](const AlphaMuParams& a) { return am_sample_envelope(a, rng); },
                          [&rng](const KappaMuParams& k) { return std::sqrt(km_sample_power(k, rng)); },
                      },
                      p);
}

std::complex<double> sample_complex_gain(const FadingParams& p, RandomStream& rng) {
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    return std::polar(sample_envelope(p, rng), phase);
}

std::string describe(const FadingParams& p) {
    std::ostringstream os;
    std::visit(Overloaded{
                   [&os](const NakagamiParams& n) { os << "nakagami(m=" << n.m << ")"; },
                   [&os](const AlphaMuParams& a) { os << "alpha_mu(a=" << a.alpha << ";mu=" << a.mu << ")"; },
                   [&os](const KappaMuParams& k) { os << "kappa_mu(k=" << k.kappa << ";mu=" << k.mu << ")"; },
               },
               p);
    return os.str();
}

double gamma_from_uniform(double shape, double u) {
    return specfun::inv_reg_lower_incomplete_gamma(shape, u);
}

long poisson_from_uniform(double lambda, double u) {
    require(lambda >= 0.0, "poisson_from_uniform: lambda must be nonnegative");
    if (lambda == 0.0) return 0;
    if (lambda < 50.0) {
        double pmf = std::exp(-lambda);
        double cdf = pmf;
        long j = 0;
        while (cdf < u) {
            ++j;
            pmf *= lambda / static_cast<double>(j);
            cdf += pmf;
            if (j > lambda && pmf < 1e-18 * cdf) break;  // u within rounding of 1
        }
        return j;
    }
    // F(j) = Q(j + 1, lambda); walk from a normal-approximation start.
    const auto cdf = [lambda](long j) {
        return specfun::reg_upper_incomplete_gamma(static_cast<double>(j) + 1.0, lambda);
    };
    long j = std::max(0L, static_cast<long>(std::floor(lambda)));
    if (cdf(j) >= u) {
        while (j > 0 && cdf(j - 1) >= u) --j;
    } else {
        while (cdf(j) < u) {
            ++j;
            if (j > lambda + 60.0 * std::sqrt(lambda)) break;
        }
    }
    return j;
}

}  // namespace fading
}  // namespace risfade
