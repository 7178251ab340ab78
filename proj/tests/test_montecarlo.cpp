#include <doctest.h>

#include <cmath>
#include <limits>

#include "risfade/montecarlo.hpp"

using namespace risfade;
using namespace risfade::montecarlo;
using sysmodel::SystemConfig;

namespace {

SweepSpec small_sweep(std::uint64_t trials, std::vector<double> points = {0.0, 10.0, 20.0, 30.0}) {
    SweepSpec spec;
    spec.power_points_dbm = std::move(points);
    spec.trials_per_point = trials;
    spec.workers = 1;
    return spec;
}

}  // namespace

TEST_CASE("Wilson interval") {
    const auto ci = wilson_interval(50, 100);
    CHECK(ci.low == doctest::Approx(0.40383).epsilon(1e-4));
    CHECK(ci.high == doctest::Approx(0.59617).epsilon(1e-4));
    const auto none = wilson_interval(0, 1000);
    CHECK(none.low == 0.0);
    CHECK(none.high > 0.0);
    const auto all = wilson_interval(1000, 1000);
    CHECK(all.high == 1.0);
    CHECK(all.low < 1.0);
}

TEST_CASE("results do not depend on the worker count") {
    const SystemConfig cfg;
    SweepSpec spec = small_sweep(3000);
    const auto one = run_sweep(cfg, spec);
    spec.workers = 3;
    const auto three = run_sweep(cfg, spec);
    spec.workers = 7;
    const auto seven = run_sweep(cfg, spec);
    REQUIRE(one.size() == 4);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].outages == three[i].outages);
        CHECK(one[i].outages == seven[i].outages);
        CHECK(one[i].op_estimate == seven[i].op_estimate);
    }
    const auto again = run_sweep(cfg, small_sweep(3000));
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(again[i].outages == one[i].outages);
}

TEST_CASE("different seeds give different estimates") {
    const SystemConfig cfg;
    SweepSpec a = small_sweep(5000, {10.0});
    SweepSpec b = a;
    b.master_seed = a.master_seed + 1;
    CHECK(run_sweep(cfg, a)[0].outages != run_sweep(cfg, b)[0].outages);
}

TEST_CASE("result invariants") {
    const SystemConfig cfg;
    for (const auto& r : run_sweep(cfg, small_sweep(2000))) {
        CHECK(r.ci_low <= r.op_estimate);
        CHECK(r.op_estimate <= r.ci_high);
        CHECK(r.op_estimate == static_cast<double>(r.outages) / static_cast<double>(r.trials));
        CHECK(r.trials == 2000);
    }
    CHECK(run_sweep(cfg, small_sweep(100, {})).empty());
}

TEST_CASE("noiseless link never outages") {
    SystemConfig cfg;
    cfg.noise_dbm = -std::numeric_limits<double>::infinity();
    for (auto scheme : {Scheme::ris_noma, Scheme::conventional_noma}) {
        const auto r = estimate_op_point(cfg, 0.0, 2000, {}, scheme);
        CHECK(r.outages == 0);
    }
}

TEST_CASE("unreachable rate always outages") {
    SystemConfig cfg;
    cfg.r1_target = 2.1;
    SweepSpec spec = small_sweep(500);
    for (const auto& r : run_sweep(cfg, spec)) CHECK(r.op_estimate == 1.0);
    spec.scheme = Scheme::conventional_noma;
    for (const auto& r : run_sweep(cfg, spec)) CHECK(r.op_estimate == 1.0);
}

TEST_CASE("Bernoulli stub estimator") {
    const double p = 0.3;
    const std::uint64_t n = 2000;
    int inside = 0;
    for (std::uint64_t run = 0; run < 1000; ++run) {
        const auto k = count_events(n, 1000 + run, 0, [p](const TrialStreams& s) {
            return s.substream(0).uniform() < p;
        }, 1);
        const double op = static_cast<double>(k) / static_cast<double>(n);
        if (std::fabs(op - p) < 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n))) ++inside;
    }
    CHECK(inside >= 990);
}

TEST_CASE("outage probability falls with power") {
    const SystemConfig cfg;
    SweepSpec spec = small_sweep(20'000, {0.0, 10.0, 20.0, 30.0, 40.0});
    spec.scheme = Scheme::conventional_noma;
    const auto r = run_sweep(cfg, spec);
    for (std::size_t i = 1; i < r.size(); ++i) {
        const double se = std::sqrt((r[i].op_estimate * (1 - r[i].op_estimate) +
                                     r[i - 1].op_estimate * (1 - r[i - 1].op_estimate)) / 20'000.0);
        CHECK(r[i].op_estimate <= r[i - 1].op_estimate + 2.0 * se);
    }
}

TEST_CASE("U2 outage sweep") {
    const SystemConfig cfg;
    SweepSpec spec = small_sweep(5000, {0.0, 40.0});
    spec.user = User::u2;
    const auto r = run_sweep(cfg, spec);
    CHECK(r[0].op_estimate >= r[1].op_estimate);
}

TEST_CASE("paired comparison dominance") {
    const SystemConfig cfg;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        SweepSpec spec = small_sweep(4000, {0.0, 8.0, 16.0, 24.0, 32.0, 40.0});
        spec.master_seed = seed;
        for (const auto& pt : compare_schemes(cfg, spec)) {
            CHECK(pt.only_ris == 0);
            CHECK(pt.difference >= 0.0);
            CHECK(pt.conventional.op_estimate >= pt.ris.op_estimate);
            CHECK(pt.diff_ci_low <= pt.difference);
            CHECK(pt.difference <= pt.diff_ci_high);
        }
    }
}

TEST_CASE("paired comparison reproduces the single-scheme sweeps") {
    const SystemConfig cfg;
    SweepSpec spec = small_sweep(3000, {10.0, 20.0});
    const auto paired = compare_schemes(cfg, spec);
    const auto ris = run_sweep(cfg, spec);
    spec.scheme = Scheme::conventional_noma;
    const auto conv = run_sweep(cfg, spec);
    for (std::size_t i = 0; i < paired.size(); ++i) {
        CHECK(paired[i].ris.outages == ris[i].outages);
        CHECK(paired[i].conventional.outages == conv[i].outages);
    }
}

TEST_CASE("switched-off RIS gives zero difference") {
    SystemConfig cfg;
    cfg.reflection_amplitude = 0.0;
    for (const auto& pt : compare_schemes(cfg, small_sweep(3000))) {
        CHECK(pt.difference == 0.0);
        CHECK(pt.only_conventional == 0);
    }
}

TEST_CASE("sweep validation") {
    SweepSpec spec = small_sweep(0);
    CHECK_THROWS_AS(spec.validate(), sysmodel::ConfigError);
    spec = small_sweep(10, {0.0, 0.0});
    CHECK_THROWS_AS(spec.validate(), sysmodel::ConfigError);
    CHECK(parse_scheme("conventional") == Scheme::conventional_noma);
    CHECK(to_string(Scheme::ris_noma) == "ris");
    CHECK_THROWS_AS(parse_user("u3"), sysmodel::ConfigError);
    CHECK(default_power_points().size() == 21);
}
