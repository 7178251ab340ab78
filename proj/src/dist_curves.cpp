#include "risfade/dist_curves.hpp"

#include <cmath>
#include <iomanip>
#include <stdexcept>

namespace risfade {
namespace dist {

namespace {

struct Evaluator {
    const fading::FadingParams& p;
    Domain domain;

    double pdf(double x) const {
        if (const auto* n = std::get_if<fading::NakagamiParams>(&p)) {
            return fading::am_envelope_pdf({2.0, n->m, std::sqrt(n->omega)}, x);
        }
        if (const auto* a = std::get_if<fading::AlphaMuParams>(&p)) return fading::am_envelope_pdf(*a, x);
        return fading::km_power_pdf(std::get<fading::KappaMuParams>(p), x);
    }

    double cdf(double x) const {
        return domain == Domain::power ? fading::power_cdf(p, x) : fading::power_cdf(p, x * x);
    }
};

constexpr double kTailMass = 1e-6;

}  // namespace

Domain natural_domain(const fading::FadingParams& p) {
    return std::holds_alternative<fading::KappaMuParams>(p) ? Domain::power : Domain::envelope;
}

double support_limit(const fading::FadingParams& p) {
    fading::validate(p);
    const Domain domain = natural_domain(p);
    const Evaluator eval{p, domain};
    const double mean = fading::mean_power(p);
    double x = domain == Domain::power ? mean : std::sqrt(mean);
    for (int i = 0; i < 200; ++i) {
        if (eval.cdf(x) > 1.0 - kTailMass) return x;
        x *= 2.0;
    }
    throw std::runtime_error("support_limit: cdf never reached 1 - 1e-6");
}

std::vector<CurvePoint> dist_curve(const fading::FadingParams& p, std::size_t points) {
    if (points < 2) throw std::invalid_argument("dist_curve: need at least two points");
    const Domain domain = natural_domain(p);
    const Evaluator eval{p, domain};
    const double x_max = support_limit(p);
    std::vector<CurvePoint> out;
    out.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        // last node pinned to x_max exactly
        const double x = i + 1 == points ? x_max : x_max * static_cast<double>(i) / static_cast<double>(points - 1);
        out.push_back({x, eval.pdf(x), eval.cdf(x)});
    }
    return out;
}

void write_csv(std::ostream& os, const std::vector<CurvePoint>& curve) {
    os << "x,pdf,cdf\n" << std::setprecision(17);
    for (const auto& pt : curve) os << pt.x << ',' << pt.pdf << ',' << pt.cdf << '\n';
}

}  // namespace dist
}  // namespace risfade
