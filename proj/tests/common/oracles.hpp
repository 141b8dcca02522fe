#pragma once

// Independent reference implementations used only by the tests. They favour
// clarity and long double accuracy over speed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "ebcs/kernel.hpp"

namespace oracle {

inline long double erfc_cf(long double z) {
  // erfc(z) = exp(-z^2) / (sqrt(pi) (z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))), z > 0.
  long double f = z;
  for (int n = 4000; n >= 1; --n) f = z + (n / 2.0L) / f;
  return std::exp(-z * z) / (std::sqrt(std::numbers::pi_v<long double>) * f);
}

inline long double erf_series(long double z) {
  // erf(z) = 2/sqrt(pi) sum_n (-1)^n z^(2n+1) / (n! (2n+1)).
  long double term = z;
  long double sum = z;
  for (int n = 1; n < 400; ++n) {
    term *= -z * z / n;
    const long double add = term / (2 * n + 1);
    sum += add;
    if (std::abs(add) < 1e-30L * std::abs(sum)) break;
  }
  return 2.0L / std::sqrt(std::numbers::pi_v<long double>) * sum;
}

inline long double erf_ld(double z) {
  const long double az = std::abs(static_cast<long double>(z));
  const long double v = az <= 2.5L ? erf_series(az) : 1.0L - erfc_cf(az);
  return z < 0 ? -v : v;
}

inline long double erfc_ld(double z) {
  const long double lz = z;
  if (lz >= 2.5L) return erfc_cf(lz);
  return 1.0L - erf_series(lz);
}

/// log of int_{-1}^{1} exp(y xi - v xi^2) dxi by Gauss-Legendre panels laid
/// outwards from the peak of the integrand.
inline double log_mixture_quadrature(double y_in, double v_in) {
  const long double y = std::abs(static_cast<long double>(y_in));
  const long double v = v_in;
  const long double peak = std::min(1.0L, y / (2.0L * v));
  const long double top = y * peak - v * peak * peak;
  auto f = [&](long double xi) { return std::exp(y * xi - v * xi * xi - top); };
  long double scale = 1.0L / std::sqrt(2.0L * v);
  if (peak >= 1.0L) scale = std::min(scale, 1.0L / (y - 2.0L * v + 1e-300L));
  const long double panel = scale / 2.0L;
  long double total = 0.0L;
  // Left of the peak.
  for (long double b = peak; b > -1.0L;) {
    const long double a = std::max(-1.0L, b - panel);
    const long double piece = boost::math::quadrature::gauss<long double, 30>::integrate(f, a, b);
    total += piece;
    if (piece < 1e-40L * total) break;
    b = a;
  }
  // Right of the peak.
  for (long double a = peak; a < 1.0L;) {
    const long double b = std::min(1.0L, a + panel);
    const long double piece = boost::math::quadrature::gauss<long double, 30>::integrate(f, a, b);
    total += piece;
    if (piece < 1e-40L * total) break;
    a = b;
  }
  return static_cast<double>(top + std::log(total));
}

/// Inverts y -> log I(y; v) by scanning [0, y_max] with step 1e-4 and then
/// bisecting inside the bracketing cell.
inline double grid_scan_radius(double v, double log_g, double y_max) {
  auto f = [&](double y) { return ebcs::log_mixture_integral(y, v).log_magnitude - log_g; };
  double lo = 0.0;
  const auto steps = static_cast<std::int64_t>(y_max / 1e-4);
  for (std::int64_t k = 1; k <= steps; ++k) {
    const double y = static_cast<double>(k) * 1e-4;
    if (f(y) >= 0.0) {
      double hi = y;
      for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) >= 0.0 ? hi : lo) = mid;
      }
      return 0.5 * (lo + hi);
    }
    lo = y;
  }
  return std::nan("");
}

/// Radical-inverse (Halton) sequence in [0, 1).
inline double halton(std::int64_t index, int base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

/// Riemann zeta by the partial sum to 10^6 plus the integral tail.
inline double zeta(double s) {
  long double sum = 0.0L;
  const std::int64_t n = 1000000;
  for (std::int64_t k = n; k >= 1; --k) sum += std::pow(static_cast<long double>(k), -static_cast<long double>(s));
  const long double nn = n;
  sum += std::pow(nn, 1.0L - s) / (s - 1.0L) - std::pow(nn, -static_cast<long double>(s)) / 2.0L;
  return static_cast<double>(sum);
}

inline long double psi_e_ld(long double x) { return -std::log1p(-x) - x; }

/// Plug-in empirical Bernstein interval of a constant mean written out
/// directly from its definition: returns {center, halfwidth} after the stream.
struct WsrResult {
  double center;
  double halfwidth;
};

inline WsrResult wsr_straight_line(const std::vector<double>& x, double alpha) {
  const auto n = x.size();
  std::vector<double> mu_hat(n + 1), sigma2(n + 1);
  mu_hat[0] = 0.5;
  sigma2[0] = 0.25;
  double sx = 0.0;
  double ss = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    sx += x[i - 1];
    mu_hat[i] = (0.5 + sx) / static_cast<double>(i + 1);
    ss += (x[i - 1] - mu_hat[i]) * (x[i - 1] - mu_hat[i]);
    sigma2[i] = (0.25 + ss) / static_cast<double>(i + 1);
  }
  double sl = 0.0;
  double slx = 0.0;
  double sv = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i);
    const double lambda = std::min(0.5, std::sqrt(2.0 * std::log(2.0 / alpha) / (sigma2[i - 1] * t * std::log(1.0 + t))));
    sl += lambda;
    slx += lambda * x[i - 1];
    const double r = x[i - 1] - mu_hat[i - 1];
    sv += r * r * (-std::log(1.0 - lambda) - lambda);
  }
  return {slx / sl, (std::log(2.0 / alpha) + sv) / sl};
}

}  // namespace oracle
