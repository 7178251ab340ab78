#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "risfade/random.hpp"
#include "risfade/sysmodel.hpp"

namespace risfade {
namespace montecarlo {

using sysmodel::Scheme;

enum class User { u1, u2 };

std::string_view to_string(Scheme scheme);
std::string_view to_string(User user);
Scheme parse_scheme(std::string_view text);
User parse_user(std::string_view text);

inline constexpr std::uint64_t kDefaultTrials = 200'000;
inline constexpr std::uint64_t kDefaultSeed = 20230611;

/// 0, 2, ..., 40 dBm.
std::vector<double> default_power_points();

struct SweepSpec {
    std::vector<double> power_points_dbm = default_power_points();
    std::uint64_t trials_per_point = kDefaultTrials;
    std::uint64_t master_seed = kDefaultSeed;
    Scheme scheme = Scheme::ris_noma;
    User user = User::u1;
    unsigned workers = 0;  // 0: one per hardware thread; never affects results

    void validate() const;
};

struct OutageResult {
    double power_dbm = 0.0;
    double op_estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t outages = 0;
};

struct Interval {
    double low;
    double high;
};

/// Wilson score interval for k successes in n trials at normal quantile z.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

/// Counts the trials whose indicator fires. Trial t of point `point` sees the
/// streams TrialStreams(seed, point, t); trials are split into contiguous
/// blocks over `workers` threads and the counts summed, so the result does not
/// depend on the worker count.
std::uint64_t count_events(std::uint64_t trials, std::uint64_t seed, std::uint32_t point,
                           const std::function<bool(const TrialStreams&)>& indicator, unsigned workers = 0);

struct SeedContext {
    std::uint64_t master_seed = kDefaultSeed;
    std::uint32_t point_index = 0;
    unsigned workers = 0;
};

/// Outage indicator of one trial. Only the channel entries the (scheme, user)
/// pair depends on are drawn; the keyed substreams make this equivalent to
/// drawing the full realization.
bool trial_outage(const sysmodel::SystemConfig& cfg, const TrialStreams& streams, Scheme scheme, User user);

OutageResult estimate_op_point(const sysmodel::SystemConfig& cfg, double power_dbm, std::uint64_t trials,
                               const SeedContext& ctx, Scheme scheme = Scheme::ris_noma, User user = User::u1);

std::vector<OutageResult> run_sweep(const sysmodel::SystemConfig& cfg, const SweepSpec& spec);

struct PairedPoint {
    double power_dbm = 0.0;
    OutageResult ris;
    OutageResult conventional;
    /// Trials in outage under conventional NOMA but not under RIS NOMA, and
    /// the reverse. Identical realizations feed both schemes.
    std::uint64_t only_conventional = 0;
    std::uint64_t only_ris = 0;
    double difference = 0.0;  // OP(conventional) - OP(ris)
    double diff_ci_low = 0.0;
    double diff_ci_high = 0.0;
};

/// Paired comparison on common random numbers. spec.scheme is ignored.
std::vector<PairedPoint> compare_schemes(const sysmodel::SystemConfig& cfg, const SweepSpec& spec);

}  // namespace montecarlo
}  // namespace risfade
