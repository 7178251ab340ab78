#include "risfade/sysmodel.hpp"

#include <cmath>
#include <numbers>

namespace risfade {
namespace sysmodel {

namespace {

void check_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError(field, "must be finite and > 0");
}

void check_link(const fading::FadingParams& p, const char* field) {
    try {
        fading::validate(p);
    } catch (const std::domain_error& e) {
        throw ConfigError(field, e.what());
    }
}

double wrap_phase(double phase) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(phase, two_pi);
    if (w < 0.0) w += two_pi;
    return w >= two_pi ? 0.0 : w;
}

}  // namespace

double noise_dbm_for_bandwidth(double bandwidth_hz) {
    return -174.0 + 10.0 * std::log10(bandwidth_hz);
}

void SystemConfig::validate() const {
    if (n_elements < 1) throw ConfigError("system.n_elements", "must be >= 1");
    check_positive(d1, "system.d1");
    check_positive(d_ris, "system.d_ris");
    check_positive(d_r1, "system.d_r1");
    check_positive(d2, "system.d2");
    check_positive(eta_n, "system.eta_n");
    check_positive(eta_l, "system.eta_l");
    check_positive(ref_distance, "system.ref_distance");
    if (!std::isfinite(pl_ref_db)) throw ConfigError("system.pl_ref_db", "must be finite");
    for (auto [d, name] : {std::pair{d1, "system.d1"}, std::pair{d_ris, "system.d_ris"},
                           std::pair{d_r1, "system.d_r1"}, std::pair{d2, "system.d2"}}) {
        if (d < ref_distance) throw ConfigError(name, "must not be below system.ref_distance");
    }
    if (!(alpha1_sq >= 0.0 && alpha2_sq >= 0.0)) {
        throw ConfigError("system.alpha1_sq", "power fractions must be nonnegative");
    }
    if (std::fabs(alpha1_sq + alpha2_sq - 1.0) > 1e-9) {
        throw ConfigError("system.alpha1_sq",
                          "power fractions must satisfy alpha1_sq + alpha2_sq = 1 (got " +
                              std::to_string(alpha1_sq + alpha2_sq) + ")");
    }
    if (!(alpha1_sq > alpha2_sq)) {
        throw ConfigError("system.alpha1_sq", "far user U1 must get the larger share (alpha1_sq > alpha2_sq)");
    }
    if (!(r1_target > 0.0) || !std::isfinite(r1_target)) throw ConfigError("system.r1_target", "must be > 0");
    if (!(r2_target > 0.0) || !std::isfinite(r2_target)) throw ConfigError("system.r2_target", "must be > 0");
    if (std::isnan(noise_dbm) || noise_dbm == std::numeric_limits<double>::infinity()) {
        throw ConfigError("system.noise_dbm", "must be finite (or -inf for a noiseless link)");
    }
    if (!std::isfinite(tx_power_dbm)) throw ConfigError("system.tx_power_dbm", "must be finite");
    if (!(reflection_amplitude >= 0.0 && reflection_amplitude <= 1.0)) {
        throw ConfigError("system.reflection_amplitude", "must lie in [0, 1]");
    }
    check_link(links.direct_u1, "system.links.direct_u1");
    check_link(links.bs_u2, "system.links.bs_u2");
    check_link(links.bs_ris, "system.links.bs_ris");
    check_link(links.ris_u1, "system.links.ris_u1");
}

double SystemConfig::tau1() const { return std::exp2(r1_target) - 1.0; }
double SystemConfig::tau2() const { return std::exp2(r2_target) - 1.0; }

std::uint32_t substream_id(Link link, std::size_t element) {
    switch (link) {
        case Link::direct_u1: return 0;
        case Link::bs_u2: return 1;
        case Link::bs_ris: return static_cast<std::uint32_t>(2 + 2 * element);
        case Link::ris_u1: return static_cast<std::uint32_t>(3 + 2 * element);
    }
    return 0;
}

std::complex<double> sample_link(const SystemConfig& cfg, const TrialStreams& streams, Link link,
                                 std::size_t element) {
    const fading::FadingParams* law = nullptr;
    switch (link) {
        case Link::direct_u1: law = &cfg.links.direct_u1; break;
        case Link::bs_u2: law = &cfg.links.bs_u2; break;
        case Link::bs_ris: law = &cfg.links.bs_ris; break;
        case Link::ris_u1: law = &cfg.links.ris_u1; break;
    }
    RandomStream rng = streams.substream(substream_id(link, element));
    return fading::sample_complex_gain(fading::with_unit_mean_power(*law), rng);
}

ChannelRealization realize_channels(const SystemConfig& cfg, const TrialStreams& streams) {
    const auto n = static_cast<std::size_t>(cfg.n_elements);
    ChannelRealization r;
    r.h_u1 = sample_link(cfg, streams, Link::direct_u1);
    r.h_u2 = sample_link(cfg, streams, Link::bs_u2);
    r.g1.resize(n);
    r.h_r.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.g1[i] = sample_link(cfg, streams, Link::bs_ris, i);
        r.h_r[i] = sample_link(cfg, streams, Link::ris_u1, i);
    }
    return r;
}

PhaseShiftMatrix align_phases(const ChannelRealization& r, double amplitude) {
    const std::size_t n = r.g1.size();
    PhaseShiftMatrix phi;
    phi.amplitudes.assign(n, amplitude);
    phi.phases.resize(n);
    const double target = std::arg(r.h_u1);
    for (std::size_t i = 0; i < n; ++i) {
        phi.phases[i] = wrap_phase(target - std::arg(r.g1[i]) - std::arg(std::conj(r.h_r[i])));
    }
    return phi;
}

double path_loss_linear(double distance, double exponent, const SystemConfig& cfg) {
    if (!(distance >= cfg.ref_distance)) {
        throw std::domain_error("path_loss_linear: distance below the reference distance");
    }
    return std::pow(10.0, cfg.pl_ref_db / 10.0) * std::pow(distance / cfg.ref_distance, -exponent);
}

std::complex<double> composite_channel_u1(const ChannelRealization& r, const PhaseShiftMatrix& phi,
                                          const SystemConfig& cfg, Scheme scheme) {
    const std::complex<double> direct = r.h_u1 * std::sqrt(path_loss_linear(cfg.d1, cfg.eta_n, cfg));
    if (scheme == Scheme::conventional_noma) return direct;
    std::complex<double> cascade{0.0, 0.0};
    for (std::size_t i = 0; i < r.g1.size(); ++i) {
        cascade += r.g1[i] * std::polar(phi.amplitudes[i], phi.phases[i]) * std::conj(r.h_r[i]);
    }
    const double reflected_amp = std::sqrt(path_loss_linear(cfg.d_ris, cfg.eta_l, cfg) *
                                           path_loss_linear(cfg.d_r1, cfg.eta_n, cfg));
    return direct + cascade * reflected_amp;
}

double effective_gain_u1(const ChannelRealization& r, const PhaseShiftMatrix& phi,
                         const SystemConfig& cfg, Scheme scheme) {
    return std::norm(composite_channel_u1(r, phi, cfg, scheme));
}

double effective_gain_u2(const ChannelRealization& r, const SystemConfig& cfg) {
    return std::norm(r.h_u2) * path_loss_linear(cfg.d2, cfg.eta_n, cfg);
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double sinr_u1(double gain, const SystemConfig& cfg) {
    const double p = dbm_to_mw(cfg.tx_power_dbm);
    const double signal = cfg.alpha1_sq * p * gain;
    if (signal == 0.0) return 0.0;
    return signal / (cfg.alpha2_sq * p * gain + dbm_to_mw(cfg.noise_dbm));
}

U2Sinr sinr_u2(double gain2, const SystemConfig& cfg) {
    const double p = dbm_to_mw(cfg.tx_power_dbm);
    const double noise = dbm_to_mw(cfg.noise_dbm);
    U2Sinr out;
    const double far_signal = cfg.alpha1_sq * p * gain2;
    if (far_signal > 0.0) out.sic = far_signal / (cfg.alpha2_sq * p * gain2 + noise);
    const double own_signal = cfg.alpha2_sq * p * gain2;
    if (own_signal > 0.0) {
        out.own = noise > 0.0 ? own_signal / noise : std::numeric_limits<double>::infinity();
    }
    return out;
}

bool outage_u1(double sinr, const SystemConfig& cfg) { return sinr < cfg.tau1(); }

bool outage_u2(const U2Sinr& sinrs, const SystemConfig& cfg) {
    return sinrs.sic < cfg.tau1() || sinrs.own < cfg.tau2();
}

std::optional<double> conventional_rayleigh_op(const SystemConfig& cfg) {
    const double tau = cfg.tau1();
    const double margin = cfg.alpha1_sq - tau * cfg.alpha2_sq;
    if (!(margin > 0.0)) return std::nullopt;
    const double p = dbm_to_mw(cfg.tx_power_dbm);
    const double noise = dbm_to_mw(cfg.noise_dbm);
    return -std::expm1(-tau * noise / (margin * p * path_loss_linear(cfg.d1, cfg.eta_n, cfg)));
}

}  // namespace sysmodel
}  // namespace risfade
