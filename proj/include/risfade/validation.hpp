#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "risfade/fading.hpp"

namespace risfade {
namespace validation {

/// Kolmogorov-Smirnov distance between the empirical law of `samples` and
/// `cdf`. Sorts a copy of the samples.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// 1.95 / sqrt(n), the acceptance bound used for every goodness-of-fit check.
double ks_threshold(std::size_t n);

struct IdentityCheck {
    std::string name;
    bool passed = false;
    double max_deviation = 0.0;
    double tolerance = 0.0;
};

/// CDFs under test. Defaults are the library implementations; a test can swap
/// in a faulty one to confirm the suite catches it.
struct SuiteHooks {
    std::function<double(const fading::KappaMuParams&, double)> km_cdf = fading::km_power_cdf;
    std::function<double(const fading::AlphaMuParams&, double)> am_cdf = fading::am_power_cdf;
};

struct SuiteOptions {
    std::size_t ks_samples = 100'000;
    std::uint64_t seed = 7;
};

/// The special-case identity suite: gamma-limit identities of both families,
/// every preset against its classical closed form, sampler goodness of fit and
/// the cross-family Nakagami MGF identity.
std::vector<IdentityCheck> run_identity_suite(const SuiteHooks& hooks = {}, const SuiteOptions& options = {});

/// Writes "PASS|FAIL  name  max_dev=...  tol=..." lines; returns true iff all passed.
bool print_report(std::ostream& os, const std::vector<IdentityCheck>& checks);

}  // namespace validation
}  // namespace risfade
