#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace risfade {
namespace specfun {

/// Raised when adaptive quadrature exhausts its subdivision budget or the
/// integrand produces a NaN.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
};

// All routines below are pure and thread safe. Domain violations throw
// std::domain_error.

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double reg_lower_incomplete_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// directly so that small tails keep their relative accuracy.
double reg_upper_incomplete_gamma(double a, double x);

/// Smallest x with P(a, x) = p, for 0 <= p < 1.
double inv_reg_lower_incomplete_gamma(double a, double p);

/// Same root, expressed through the complement q = 1 - p (0 < q <= 1). Lets
/// callers that hold the upper-tail probability avoid forming 1 - q.
double inv_reg_upper_incomplete_gamma(double a, double q);

/// exp(-x) * I_order(x), order > -1, x >= 0.
///
/// Power series below a crossover point, Hankel large-argument expansion above
/// it. The crossover is max(kBesselAsymptoticMin, 2 * order^2) so the
/// expansion is only used where its smallest term is far below 1e-16.
/// Returns +inf at x = 0 for -1 < order < 0 (I_order diverges there).
double bessel_i_scaled(double order, double x);

/// Unscaled I_order(x). Overflows to +inf for x beyond roughly 710; prefer
/// bessel_i_scaled anywhere the exponential can be folded into the caller.
double bessel_i(double order, double x);

/// Generalized Marcum Q function Q_order(a, b).
double marcum_q(double order, double a, double b);

/// Complement 1 - Q_order(a, b), summed from lower gamma tails so that values
/// near zero keep relative accuracy.
double marcum_p(double order, double a, double b);

/// Adaptive Gauss-Kronrod (7/15) integration of f over [lower, upper]. An
/// infinite upper limit is mapped onto [0, 1) with t = lower + s / (1 - s).
double integrate(const std::function<double(double)>& f, double lower, double upper,
                 const QuadratureSpec& spec = {});

inline constexpr double kBesselAsymptoticMin = 40.0;

namespace detail {

/// Branch entry points of bessel_i_scaled, exposed for crossover tests.
double bessel_i_scaled_series(double order, double x);
double bessel_i_scaled_asymptotic(double order, double x);
double bessel_crossover(double order);

}  // namespace detail
}  // namespace specfun
}  // namespace risfade
