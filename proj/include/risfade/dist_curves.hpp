#pragma once

#include <ostream>
#include <vector>

#include "risfade/fading.hpp"

namespace risfade {
namespace dist {

struct CurvePoint {
    double x;
    double pdf;
    double cdf;
};

/// kappa-mu curves are tabulated over power, alpha-mu and Nakagami over the
/// envelope (the domains their densities are defined in).
enum class Domain { power, envelope };

Domain natural_domain(const fading::FadingParams& p);

/// Smallest x_max = x0 * 2^k with cdf(x_max) > 1 - 1e-6, x0 = sqrt(mean power)
/// for the envelope domain and mean power for the power domain.
double support_limit(const fading::FadingParams& p);

/// `points` equally spaced samples of (x, pdf, cdf) over [0, support_limit].
std::vector<CurvePoint> dist_curve(const fading::FadingParams& p, std::size_t points = 512);

/// Header "x,pdf,cdf" then one row per point, 17 significant digits.
void write_csv(std::ostream& os, const std::vector<CurvePoint>& curve);

}  // namespace dist
}  // namespace risfade
