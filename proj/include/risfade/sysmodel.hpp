#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "risfade/fading.hpp"
#include "risfade/random.hpp"

namespace risfade {
namespace sysmodel {

/// Configuration rejected by validation; field() names the offending entry by
/// its dotted config path.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Fading law of each link. Scales are ignored: every entry is drawn with unit
/// mean power and path loss is applied on top.
struct LinkChannels {
    fading::FadingParams direct_u1 = fading::NakagamiParams{2.0, 1.0};
    fading::FadingParams bs_u2 = fading::NakagamiParams{1.0, 1.0};   // Rayleigh
    fading::FadingParams bs_ris = fading::NakagamiParams{2.0, 1.0};  // m_g1
    fading::FadingParams ris_u1 = fading::NakagamiParams{2.0, 1.0};  // m_hr
};

/// Thermal noise floor -174 dBm/Hz + 10 log10(bandwidth).
double noise_dbm_for_bandwidth(double bandwidth_hz);

struct SystemConfig {
    int n_elements = 16;
    double d1 = 80.0;     // BS -> U1, m
    double d_ris = 40.0;  // BS -> RIS, m
    double d_r1 = 45.0;   // RIS -> U1, m
    double d2 = 20.0;     // BS -> U2, m
    double eta_n = 3.5;
    double eta_l = 2.2;
    double pl_ref_db = -30.0;
    double ref_distance = 1.0;
    double alpha1_sq = 0.75;
    double alpha2_sq = 0.25;
    double r1_target = 1.5;  // bit/s/Hz
    double r2_target = 1.0;
    double noise_dbm = noise_dbm_for_bandwidth(100e6);  // -infinity means noiseless
    double tx_power_dbm = 20.0;
    double reflection_amplitude = 1.0;  // beta_i applied to every element
    LinkChannels links;

    /// Throws ConfigError naming the first violated invariant.
    void validate() const;

    double tau1() const;  // 2^R1 - 1
    double tau2() const;  // 2^R2 - 1
};

struct ChannelRealization {
    std::complex<double> h_u1;
    std::vector<std::complex<double>> g1;   // BS -> RIS
    std::vector<std::complex<double>> h_r;  // RIS -> U1
    std::complex<double> h_u2;
};

struct PhaseShiftMatrix {
    std::vector<double> amplitudes;  // beta_i in [0, 1]
    std::vector<double> phases;      // phi_i in [0, 2 pi)
};

enum class Scheme { ris_noma, conventional_noma };

enum class Link { direct_u1, bs_u2, bs_ris, ris_u1 };

/// Substream id of one channel entry inside a trial. The direct links own ids
/// 0 and 1; RIS element i owns 2 + 2i (BS -> RIS) and 3 + 2i (RIS -> U1).
std::uint32_t substream_id(Link link, std::size_t element = 0);

/// One unit-mean-power entry of the given link.
std::complex<double> sample_link(const SystemConfig& cfg, const TrialStreams& streams, Link link,
                                 std::size_t element = 0);

ChannelRealization realize_channels(const SystemConfig& cfg, const TrialStreams& streams);

/// Signal alignment: beta_i = amplitude and phi_i chosen so that every cascaded
/// term g1_i beta_i e^{j phi_i} conj(h_r_i) shares the argument of h_u1.
PhaseShiftMatrix align_phases(const ChannelRealization& r, double amplitude = 1.0);

/// 10^{pl_ref_db/10} (d / d_ref)^{-exponent}, a power gain.
double path_loss_linear(double distance, double exponent, const SystemConfig& cfg);

/// Complex U1 channel h1 including path loss.
std::complex<double> composite_channel_u1(const ChannelRealization& r, const PhaseShiftMatrix& phi,
                                          const SystemConfig& cfg, Scheme scheme);

/// |h1|^2.
double effective_gain_u1(const ChannelRealization& r, const PhaseShiftMatrix& phi,
                         const SystemConfig& cfg, Scheme scheme);

/// |h_u2|^2 L(d2, eta_n).
double effective_gain_u2(const ChannelRealization& r, const SystemConfig& cfg);

double dbm_to_mw(double dbm);

double sinr_u1(double gain, const SystemConfig& cfg);

struct U2Sinr {
    double sic = 0.0;  // U2 decoding U1's message
    double own = 0.0;  // U2 decoding its own message after SIC
};

U2Sinr sinr_u2(double gain2, const SystemConfig& cfg);

bool outage_u1(double sinr, const SystemConfig& cfg);
bool outage_u2(const U2Sinr& sinrs, const SystemConfig& cfg);

/// OP of conventional NOMA at U1 when |h_u1|^2 is exponential(1):
/// 1 - exp(-tau1 sigma^2 / ((a1 - tau1 a2) P L(d1))). Empty when
/// a1 <= tau1 a2 (outage is certain).
std::optional<double> conventional_rayleigh_op(const SystemConfig& cfg);

}  // namespace sysmodel
}  // namespace risfade
