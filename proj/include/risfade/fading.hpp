#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "risfade/random.hpp"
#include "risfade/specfun.hpp"

namespace risfade {
namespace fading {

// Domain conventions used throughout this module:
//   kappa-mu  : POWER domain, mean_power = E[W].
//   alpha-mu  : pdf in the ENVELOPE domain (R), cdf in the POWER domain
//               W = R^2 with E-scale omega^2.
//   Nakagami  : envelope R with E[R^2] = omega.

struct KappaMuParams {
    double kappa = 0.0;
    double mu = 1.0;
    double mean_power = 1.0;

    void validate() const;
};

struct AlphaMuParams {
    double alpha = 2.0;
    double mu = 1.0;
    double omega = 1.0;

    void validate() const;
};

struct NakagamiParams {
    double m = 1.0;
    double omega = 1.0;

    void validate() const;
};

using FadingParams = std::variant<NakagamiParams, AlphaMuParams, KappaMuParams>;

enum class PresetName { exponential, weibull, nakagami_m, rayleigh, one_sided_gaussian, rice };
enum class Family { alpha_mu, kappa_mu };

struct DistributionPreset {
    PresetName name;
    Family family;
    FadingParams params;
};

class UnknownPreset : public std::invalid_argument {
public:
    explicit UnknownPreset(const std::string& what) : std::invalid_argument(what) {}
};

std::string_view to_string(PresetName name);
std::string_view to_string(Family family);
PresetName parse_preset_name(std::string_view text);
Family parse_family(std::string_view text);

// --- kappa-mu ------------------------------------------------------------

/// Power-domain density. kappa below kKappaZeroThreshold switches to the exact
/// gamma limit mu^mu x^{mu-1} e^{-mu x / xbar} / (Gamma(mu) xbar^mu).
double km_power_pdf(const KappaMuParams& p, double x);

/// 1 - Q_mu(sqrt(2 kappa mu), sqrt(2 mu (1 + kappa) y / xbar)).
double km_power_cdf(const KappaMuParams& p, double y);

/// E[exp(-s W)], the closed form (mu(1+k) / (mu(1+k) + s xbar))^mu
///   * exp(mu^2 k (1+k) / (mu(1+k) + s xbar) - k mu).
double km_mgf(const KappaMuParams& p, double s);

/// Poisson-gamma mixture draw: J ~ Poisson(kappa mu), G ~ Gamma(mu + J, 1),
/// W = xbar G / (mu (1 + kappa)). That is a scaled noncentral chi-square with
/// 2 mu degrees of freedom and noncentrality 2 kappa mu, whose density is
/// km_power_pdf. Consumes the gamma uniform first, then the Poisson uniform.
double km_sample_power(const KappaMuParams& p, RandomStream& rng);

inline constexpr double kKappaZeroThreshold = 1e-12;

// --- alpha-mu ------------------------------------------------------------

/// alpha mu^mu x^{alpha mu - 1} exp(-mu (x / omega)^alpha) / (Gamma(mu) omega^{alpha mu}),
/// evaluated in log space.
double am_envelope_pdf(const AlphaMuParams& p, double x);

/// Density of W = R^2: f_R(sqrt(w)) / (2 sqrt(w)).
double am_power_pdf(const AlphaMuParams& p, double w);

/// P(mu, mu (y / omega^2)^{alpha / 2}).
double am_power_cdf(const AlphaMuParams& p, double y);

/// Envelope cdf, P(R <= r) = am_power_cdf(r^2).
double am_envelope_cdf(const AlphaMuParams& p, double r);

/// E[exp(-s W)] by quadrature of the power density.
double am_mgf(const AlphaMuParams& p, double s, const specfun::QuadratureSpec& spec = {});

/// Draws G ~ Gamma(mu, 1) and returns R = omega (G / mu)^{1/alpha}.
///
/// Why this has density am_envelope_pdf: the map g -> r = omega (g/mu)^{1/alpha}
/// is increasing with inverse g = mu (r/omega)^alpha and
/// dg/dr = alpha mu r^{alpha-1} / omega^alpha. Hence
///   f_R(r) = f_G(g(r)) dg/dr
///          = [g^{mu-1} e^{-g} / Gamma(mu)] alpha mu r^{alpha-1} / omega^alpha
///          = mu^{mu-1} r^{alpha(mu-1)} omega^{-alpha(mu-1)} e^{-mu (r/omega)^alpha}
///            alpha mu r^{alpha-1} omega^{-alpha} / Gamma(mu)
///          = alpha mu^mu r^{alpha mu - 1} e^{-mu (r/omega)^alpha} / (Gamma(mu) omega^{alpha mu}).
double am_sample_envelope(const AlphaMuParams& p, RandomStream& rng);

/// E[R^2] = omega^2 Gamma(mu + 2/alpha) / (Gamma(mu) mu^{2/alpha}).
double am_mean_power(const AlphaMuParams& p);

// --- Nakagami-m ------------------------------------------------------------

/// sqrt(G) with G ~ Gamma(m, omega / m).
double nakagami_sample_envelope(const NakagamiParams& p, RandomStream& rng);

// --- generic ---------------------------------------------------------------

/// Table rows for the classical special cases. Scale is set for unit mean power.
DistributionPreset preset(PresetName name, Family family);

double mean_power(const FadingParams& p);

/// Copy of p with its scale rescaled so that E[|g|^2] = 1.
FadingParams with_unit_mean_power(const FadingParams& p);

void validate(const FadingParams& p);

double power_cdf(const FadingParams& p, double y);
double power_pdf(const FadingParams& p, double y);

/// Envelope |g| drawn from the family's sampler.
double sample_envelope(const FadingParams& p, RandomStream& rng);

/// Complex gain: phase uniform on [0, 2 pi) drawn first, then the magnitude.
std::complex<double> sample_complex_gain(const FadingParams& p, RandomStream& rng);

/// Short label such as "kappa_mu(k=0,mu=2)" used in CSV output.
std::string describe(const FadingParams& p);

/// Gamma(shape, 1) variate by inversion of the regularized incomplete gamma.
double gamma_from_uniform(double shape, double u);

/// Poisson(lambda) variate by inversion of its cdf.
long poisson_from_uniform(double lambda, double u);

}  // namespace fading
}  // namespace risfade
