#include "risfade/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace risfade {
namespace montecarlo {

using sysmodel::ConfigError;
using sysmodel::SystemConfig;

namespace {

unsigned resolve_workers(unsigned requested, std::uint64_t trials) {
    unsigned w = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(w, std::max<std::uint64_t>(1, trials)));
}

template <class Body>
void parallel_blocks(std::uint64_t trials, unsigned workers, Body&& body) {
    const unsigned n = resolve_workers(workers, trials);
    if (n == 1) {
        body(0u, std::uint64_t{0}, trials);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) {
        const std::uint64_t begin = trials * w / n;
        const std::uint64_t end = trials * (w + 1) / n;
        pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
    }
    for (auto& t : pool) t.join();
}

// Aligned RIS channel gain and the conventional gain of one realization,
// computed from the U1 entries only.
struct U1Gains {
    double ris;
    double conventional;
};

U1Gains u1_gains(const SystemConfig& cfg, const TrialStreams& streams, bool need_ris) {
    sysmodel::ChannelRealization r;
    r.h_u1 = sysmodel::sample_link(cfg, streams, sysmodel::Link::direct_u1);
    const double direct = sysmodel::effective_gain_u1(r, {}, cfg, Scheme::conventional_noma);
    if (!need_ris) return {direct, direct};
    const auto n = static_cast<std::size_t>(cfg.n_elements);
    r.g1.resize(n);
    r.h_r.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.g1[i] = sysmodel::sample_link(cfg, streams, sysmodel::Link::bs_ris, i);
        r.h_r[i] = sysmodel::sample_link(cfg, streams, sysmodel::Link::ris_u1, i);
    }
    const auto phi = sysmodel::align_phases(r, cfg.reflection_amplitude);
    return {sysmodel::effective_gain_u1(r, phi, cfg, Scheme::ris_noma), direct};
}

void check_trials(std::uint64_t trials) {
    if (trials < 1) throw ConfigError("sweep.trials_per_point", "must be >= 1");
    if (trials > std::numeric_limits<std::uint32_t>::max()) {
        throw ConfigError("sweep.trials_per_point", "must fit in 32 bits");
    }
}

OutageResult make_result(double power_dbm, std::uint64_t outages, std::uint64_t trials) {
    const Interval ci = wilson_interval(outages, trials);
    const double op = static_cast<double>(outages) / static_cast<double>(trials);
    return {power_dbm, op, std::min(ci.low, op), std::max(ci.high, op), trials, outages};
}

}  // namespace

std::string_view to_string(Scheme scheme) {
    return scheme == Scheme::ris_noma ? "ris" : "conventional";
}

std::string_view to_string(User user) { return user == User::u1 ? "u1" : "u2"; }

Scheme parse_scheme(std::string_view text) {
    if (text == "ris" || text == "ris_noma") return Scheme::ris_noma;
    if (text == "conventional" || text == "conventional_noma") return Scheme::conventional_noma;
    throw ConfigError("sweep.scheme", "unknown scheme '" + std::string(text) + "' (ris | conventional)");
}

User parse_user(std::string_view text) {
    if (text == "u1") return User::u1;
    if (text == "u2") return User::u2;
    throw ConfigError("sweep.user", "unknown user '" + std::string(text) + "' (u1 | u2)");
}

std::vector<double> default_power_points() {
    std::vector<double> points;
    for (int p = 0; p <= 40; p += 2) points.push_back(p);
    return points;
}

void SweepSpec::validate() const {
    check_trials(trials_per_point);
    for (std::size_t i = 0; i < power_points_dbm.size(); ++i) {
        if (!std::isfinite(power_points_dbm[i])) {
            throw ConfigError("sweep.power_points_dbm", "entries must be finite");
        }
        if (i > 0 && !(power_points_dbm[i] > power_points_dbm[i - 1])) {
            throw ConfigError("sweep.power_points_dbm", "must be strictly increasing");
        }
    }
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // the score interval touches the boundary exactly when k = 0 or k = n
    const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
    const double high = successes == trials ? 1.0 : std::min(1.0, center + half);
    return {low, high};
}

std::uint64_t count_events(std::uint64_t trials, std::uint64_t seed, std::uint32_t point,
                           const std::function<bool(const TrialStreams&)>& indicator, unsigned workers) {
    const unsigned n = resolve_workers(workers, trials);
    std::vector<std::uint64_t> counts(n, 0);
    parallel_blocks(trials, n, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        std::uint64_t local = 0;
        for (std::uint64_t t = begin; t < end; ++t) {
            if (indicator(TrialStreams(seed, point, static_cast<std::uint32_t>(t)))) ++local;
        }
        counts[w] = local;
    });
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

bool trial_outage(const SystemConfig& cfg, const TrialStreams& streams, Scheme scheme, User user) {
    if (user == User::u2) {
        sysmodel::ChannelRealization r;
        r.h_u2 = sysmodel::sample_link(cfg, streams, sysmodel::Link::bs_u2);
        return sysmodel::outage_u2(sysmodel::sinr_u2(sysmodel::effective_gain_u2(r, cfg), cfg), cfg);
    }
    const U1Gains g = u1_gains(cfg, streams, scheme == Scheme::ris_noma);
    const double gain = scheme == Scheme::ris_noma ? g.ris : g.conventional;
    return sysmodel::outage_u1(sysmodel::sinr_u1(gain, cfg), cfg);
}

OutageResult estimate_op_point(const SystemConfig& cfg, double power_dbm, std::uint64_t trials,
                               const SeedContext& ctx, Scheme scheme, User user) {
    check_trials(trials);
    SystemConfig at_power = cfg;
    at_power.tx_power_dbm = power_dbm;
    at_power.validate();
    const std::uint64_t outages = count_events(
        trials, ctx.master_seed, ctx.point_index,
        [&](const TrialStreams& s) { return trial_outage(at_power, s, scheme, user); }, ctx.workers);
    return make_result(power_dbm, outages, trials);
}

std::vector<OutageResult> run_sweep(const SystemConfig& cfg, const SweepSpec& spec) {
    spec.validate();
    std::vector<OutageResult> out;
    out.reserve(spec.power_points_dbm.size());
    for (std::size_t i = 0; i < spec.power_points_dbm.size(); ++i) {
        const SeedContext ctx{spec.master_seed, static_cast<std::uint32_t>(i), spec.workers};
        out.push_back(estimate_op_point(cfg, spec.power_points_dbm[i], spec.trials_per_point, ctx,
                                        spec.scheme, spec.user));
    }
    return out;
}

std::vector<PairedPoint> compare_schemes(const SystemConfig& cfg, const SweepSpec& spec) {
    spec.validate();
    std::vector<PairedPoint> out;
    const std::uint64_t trials = spec.trials_per_point;
    for (std::size_t i = 0; i < spec.power_points_dbm.size(); ++i) {
        SystemConfig at_power = cfg;
        at_power.tx_power_dbm = spec.power_points_dbm[i];
        at_power.validate();

        struct Tally {
            std::uint64_t ris = 0, conventional = 0, only_conventional = 0, only_ris = 0;
        };
        const unsigned n = resolve_workers(spec.workers, trials);
        std::vector<Tally> tallies(n);
        parallel_blocks(trials, n, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
            Tally local;
            for (std::uint64_t t = begin; t < end; ++t) {
                const TrialStreams streams(spec.master_seed, static_cast<std::uint32_t>(i),
                                           static_cast<std::uint32_t>(t));
                const U1Gains g = u1_gains(at_power, streams, true);
                const bool ris = sysmodel::outage_u1(sysmodel::sinr_u1(g.ris, at_power), at_power);
                const bool conv = sysmodel::outage_u1(sysmodel::sinr_u1(g.conventional, at_power), at_power);
                local.ris += ris;
                local.conventional += conv;
                local.only_conventional += conv && !ris;
                local.only_ris += ris && !conv;
            }
            tallies[w] = local;
        });
        Tally total;
        for (const auto& t : tallies) {
            total.ris += t.ris;
            total.conventional += t.conventional;
            total.only_conventional += t.only_conventional;
            total.only_ris += t.only_ris;
        }

        PairedPoint pt;
        pt.power_dbm = spec.power_points_dbm[i];
        pt.ris = make_result(pt.power_dbm, total.ris, trials);
        pt.conventional = make_result(pt.power_dbm, total.conventional, trials);
        pt.only_conventional = total.only_conventional;
        pt.only_ris = total.only_ris;
        // per-trial difference d in {-1, 0, 1}; normal interval on its mean
        const double nt = static_cast<double>(trials);
        const double mean = (static_cast<double>(total.only_conventional) - static_cast<double>(total.only_ris)) / nt;
        const double second = (static_cast<double>(total.only_conventional) + static_cast<double>(total.only_ris)) / nt;
        const double var = trials > 1 ? (second - mean * mean) * nt / (nt - 1.0) : 0.0;
        const double half = 1.959963984540054 * std::sqrt(std::max(0.0, var) / nt);
        pt.difference = mean;
        pt.diff_ci_low = mean - half;
        pt.diff_ci_high = mean + half;
        out.push_back(pt);
    }
    return out;
}

}  // namespace montecarlo
}  // namespace risfade
