#include "ebcs/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ebcs/errors.hpp"

namespace ebcs {

namespace {

// Coefficients from W. J. Cody, "Rational Chebyshev approximations for the
// error function", Math. Comp. 1969 (netlib specfun CALERF).
constexpr std::array<double, 5> kA = {3.1611237438705656,  113.864154151050156, 377.485237685302021,
                                      3209.37758913846947, .185777706184603153};
constexpr std::array<double, 4> kB = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                                      2844.23683343917062};
constexpr std::array<double, 9> kC = {.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                                      298.635138197400131, 881.95222124176909,  1712.04761263407058,
                                      2051.07837782607147, 1230.33935479799725, 2.15311535474403846e-8};
constexpr std::array<double, 8> kD = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                                      1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                                      3439.36767414372164, 1230.33935480374942};
constexpr std::array<double, 6> kP = {.305326634961232344, .360344899949804439,  .125781726111229246,
                                      .0160837851487422766, 6.58749161529837803e-4, .0163153871373020978};
constexpr std::array<double, 5> kQ = {2.56852019228982242, 1.87295284992346047, .527905102951428412,
                                      .0605183413124413191, .00233520497626869185};

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kThresh = 0.46875;
constexpr double kXsmall = 1.11e-16;
constexpr double kXbig = 26.543;
constexpr double kXhuge = 6.71e7;
constexpr double kXneg = -26.628;

// erf(x) for |x| <= kThresh.
double erf_small(double x) {
  const double y = std::abs(x);
  const double ysq = y > kXsmall ? y * y : 0.0;
  double num = kA[4] * ysq;
  double den = ysq;
  for (int i = 0; i < 3; ++i) {
    num = (num + kA[i]) * ysq;
    den = (den + kB[i]) * ysq;
  }
  return x * (num + kA[3]) / (den + kB[3]);
}

// exp(y^2) erfc(y) for y > kThresh.
double erfcx_positive(double y) {
  if (y <= 4.0) {
    double num = kC[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
      num = (num + kC[i]) * y;
      den = (den + kD[i]) * y;
    }
    return (num + kC[7]) / (den + kD[7]);
  }
  if (y >= kXhuge) return kInvSqrtPi / y;
  const double ysq = 1.0 / (y * y);
  double num = kP[5] * ysq;
  double den = ysq;
  for (int i = 0; i < 4; ++i) {
    num = (num + kP[i]) * ysq;
    den = (den + kQ[i]) * ysq;
  }
  const double r = ysq * (num + kP[4]) / (den + kQ[4]);
  return (kInvSqrtPi - r) / y;
}

// exp(-y^2) split so that y^2 is formed without rounding loss.
double exp_neg_square(double y) {
  const double head = std::trunc(y * 16.0) / 16.0;
  const double del = (y - head) * (y + head);
  return std::exp(-head * head) * std::exp(-del);
}

// erfc(y) for y > kThresh.
double erfc_positive(double y) {
  if (y >= kXbig) return 0.0;
  return exp_neg_square(y) * erfcx_positive(y);
}

// log(erf(a) + erf(b)) for 0 <= a <= b.
double log_erf_pair_nonnegative(double a, double b) {
  const double tails = erfc(a) + erfc(b);
  if (tails < 0.5) return std::numbers::ln2 + std::log1p(-0.5 * tails);
  return std::log(erf(a) + erf(b));
}

}  // namespace

void KernelTolerances::validate() const {
  if (!(erf_rel_tol > 0.0) || !(root_abs_tol > 0.0) || root_max_iter < 1) {
    throw ConfigError("kernel tolerances must be strictly positive");
  }
}

double psi_e(double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw DomainError("psi_e: argument " + std::to_string(x) + " outside [0, 1)");
  }
  if (x < 1e-4) {
    // Series x^2/2 + x^3/3 + x^4/4 + x^5/5 avoids cancellation.
    return x * x * (0.5 + x * (1.0 / 3.0 + x * (0.25 + x * 0.2)));
  }
  return -std::log1p(-x) - x;
}

double erf(double z) {
  const double y = std::abs(z);
  if (y <= kThresh) return erf_small(z);
  const double r = (0.5 - erfc_positive(y)) + 0.5;
  return z < 0.0 ? -r : r;
}

double erfc(double z) {
  const double y = std::abs(z);
  if (y <= kThresh) return 1.0 - erf_small(z);
  const double r = erfc_positive(y);
  return z < 0.0 ? 2.0 - r : r;
}

double erfcx(double z) {
  const double y = std::abs(z);
  if (y <= kThresh) return std::exp(z * z) * (1.0 - erf_small(z));
  const double r = erfcx_positive(y);
  if (z >= 0.0) return r;
  if (z < kXneg) return std::numeric_limits<double>::infinity();
  const double head = std::trunc(z * 16.0) / 16.0;
  const double del = (z - head) * (z + head);
  const double e = std::exp(head * head) * std::exp(del);
  return 2.0 * e - r;
}

LogValue log_mixture_integral(double y, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError("log_mixture_integral: v must be positive, got " + std::to_string(v));
  }
  const double ay = std::abs(y);
  const double sv = std::sqrt(v);
  const double a = sv - ay / (2.0 * sv);
  const double b = sv + ay / (2.0 * sv);
  // log(1 / (2 sqrt(v / pi)))
  const double log_prefactor = -std::log(2.0) - 0.5 * std::log(v / std::numbers::pi);
  if (a >= 0.0) {
    return {ay * ay / (4.0 * v) + log_prefactor + log_erf_pair_nonnegative(a, b)};
  }
  // erf(a) + erf(b) = erfc(|a|) - erfc(b); exponents combine to |y| - v.
  const double diff = erfcx(-a) - erfcx(b) * std::exp(-2.0 * ay);
  return {ay - v + log_prefactor + std::log(diff)};
}

double solve_radius(double v, double log_g, const KernelTolerances& tol) {
  tol.validate();
  const auto f = [&](double y) { return log_mixture_integral(y, v).log_magnitude - log_g; };
  const double f0 = f(0.0);
  if (f0 == 0.0) return 0.0;
  if (f0 > 0.0) {
    throw PreconditionError("solve_radius: log I(0; v) = " + std::to_string(f0 + log_g) +
                            " exceeds target " + std::to_string(log_g));
  }
  int iter = 0;
  double lo = 0.0;
  double hi = std::max(1.0, v);
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++iter >= tol.root_max_iter) throw NumericalError("solve_radius: bracket search did not terminate");
  }
  double mid = 0.5 * (lo + hi);
  while (true) {
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (fm < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    const double width = hi - lo;
    if ((std::abs(fm) <= tol.root_abs_tol && width <= tol.root_abs_tol) ||
        width <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      break;
    }
    if (++iter >= tol.root_max_iter) throw NumericalError("solve_radius: bisection exceeded iteration limit");
  }
  return 0.5 * (lo + hi);
}

double kappa_z(double kappa) {
  if (!(kappa > 0.0)) throw ConfigError("kappa must be positive");
  return kappa * erf(1.0 / (kappa * std::numbers::sqrt2));
}

}  // namespace ebcs
