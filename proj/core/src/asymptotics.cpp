#include "ebcs/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ebcs/errors.hpp"
#include "ebcs/kernel.hpp"

namespace ebcs {

namespace {

constexpr double kQuadAbsTol = 1e-9;

double integrate(const std::function<double(double)>& f, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-12, &err);
  if (!(err <= kQuadAbsTol)) throw NumericalError("quadrature did not reach 1e-9 absolute accuracy");
  return value;
}

// Double-exponential rule; robust to endpoint singularities.
double integrate_singular(const std::function<double(double)>& f, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  double err = 0.0;
  boost::math::quadrature::tanh_sinh<double> rule;
  const double value = rule.integrate(f, lo, hi, 1e-12, &err);
  if (!(err <= kQuadAbsTol)) throw NumericalError("quadrature did not reach 1e-9 absolute accuracy");
  return value;
}

double psi_abs(double x, double mu) { return psi_e(std::abs(x - mu)); }

void check_t(double t, double lo) {
  if (!(t >= lo)) throw DomainError("t must be at least " + std::to_string(static_cast<int>(lo)));
}

double need(const std::optional<double>& v, const char* what, LimitingMethod m) {
  if (!v) throw ConfigError("limiting width '" + to_string(m) + "' needs " + what);
  return *v;
}

}  // namespace

double expected_psi_e(const DistributionSpec& dist) {
  dist.validate();
  switch (dist.kind) {
    case DistKind::kBernoulli:
      return dist.p * psi_abs(1.0, dist.p) + (1.0 - dist.p) * psi_abs(0.0, dist.p);
    case DistKind::kPointMass: return 0.0;
    case DistKind::kTwoPoint: {
      const double low = (dist.mu - dist.eps) / (1.0 - dist.eps);
      return dist.eps * psi_abs(1.0, dist.mu) + (1.0 - dist.eps) * psi_abs(low, dist.mu);
    }
    case DistKind::kUniform: {
      auto f = [](double x) { return psi_abs(x, 0.5); };
      return integrate(f, 0.0, 0.5) + integrate(f, 0.5, 1.0);
    }
    case DistKind::kBeta: {
      const double a = dist.a;
      const double b = dist.b;
      const double mu = a / (a + b);
      const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
      auto f = [=](double x) {
        const double log_density = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta;
        return psi_abs(x, mu) * std::exp(log_density);
      };
      // The integrand has a kink at mu, and for non-integer a, b an algebraic
      // endpoint singularity in some derivative, which Gauss-Kronrod resolves slowly.
      return integrate_singular(f, 0.0, mu) + integrate_singular(f, mu, 1.0);
    }
    case DistKind::kSwitch:
    case DistKind::kSinusoid: break;
  }
  throw ConfigError("expected_psi_e needs a stationary distribution, got " + dist.describe());
}

double a_t_apx(double t, double u) {
  check_t(t, 3.0);
  if (!(u > 0.0)) throw DomainError("u must be positive");
  return std::sqrt(2.0 * u * std::log(t) / t);
}

double r_t(double halfwidth, double t, double u) { return halfwidth / a_t_apx(t, u); }

double r_t_squared_prediction(double u_t, double t, double u, double alpha) {
  check_t(t, 3.0);
  return 2.0 * u_t / (t * u) * (std::log(1.0 / alpha) / std::log(t) + 0.5);
}

double a_t_wsr(double t, double sigma, double alpha, WsrVariant variant) {
  check_t(t, 16.0);
  const double lt = std::log(t);
  const double llt = std::log(lt);
  const double l2a = std::log(2.0 / alpha);
  if (variant == WsrVariant::kAlpha) return 0.5 * sigma * std::sqrt(l2a * lt / (2.0 * t)) * (1.0 + llt);
  return 0.5 * std::sqrt(sigma * sigma * lt / (2.0 * t)) * (l2a + llt);
}

double psi_sigma_ratio_bound(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mu must lie in (0, 1)");
  const double g = std::max(mu, 1.0 - mu);
  return psi_e(g) / (g * g);
}

DistributionSpec two_point_dist(double mu, double eps) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mu must lie in (0, 1)");
  if (!(eps > 0.0 && eps < mu)) throw DomainError("eps must lie in (0, mu)");
  DistributionSpec s;
  s.kind = DistKind::kTwoPoint;
  s.mu = mu;
  s.eps = eps;
  return s;
}

const std::vector<LimitingMethod>& all_limiting_methods() {
  static const std::vector<LimitingMethod> all{
      LimitingMethod::kApx,        LimitingMethod::kStch,          LimitingMethod::kWsrAlpha,
      LimitingMethod::kWsrNoAlpha, LimitingMethod::kHrms,          LimitingMethod::kHoeffAlpha,
      LimitingMethod::kHoeffNoAlpha, LimitingMethod::kRobbins,     LimitingMethod::kBern,
      LimitingMethod::kBernStch};
  return all;
}

std::string to_string(LimitingMethod m) {
  switch (m) {
    case LimitingMethod::kApx: return "apx";
    case LimitingMethod::kStch: return "stch";
    case LimitingMethod::kWsrAlpha: return "wsr_alpha";
    case LimitingMethod::kWsrNoAlpha: return "wsr_noalpha";
    case LimitingMethod::kHrms: return "hrms";
    case LimitingMethod::kHoeffAlpha: return "hoeff_alpha";
    case LimitingMethod::kHoeffNoAlpha: return "hoeff_noalpha";
    case LimitingMethod::kRobbins: return "robbins";
    case LimitingMethod::kBern: return "bern";
    case LimitingMethod::kBernStch: return "bern_stch";
  }
  return "?";
}

std::string LimitingWidthRow::name() const { return to_string(method); }

double LimitingWidthRow::value_at(double t) const {
  check_t(t, 3.0);
  const double lt = std::log(t);
  const double llt = std::log(lt);
  switch (method) {
    case LimitingMethod::kApx: return std::sqrt(2.0 * need(u, "u", method) * lt / t);
    case LimitingMethod::kStch: return std::sqrt(4.0 * need(u, "u", method) * llt / t);
    case LimitingMethod::kWsrAlpha:
    case LimitingMethod::kHoeffAlpha: {
      const double s = need(sigma, "sigma", method);
      const double a = need(alpha, "alpha", method);
      return std::sqrt(s * s * std::log(2.0 / a) * lt / (8.0 * t)) * llt;
    }
    case LimitingMethod::kWsrNoAlpha:
    case LimitingMethod::kHoeffNoAlpha: {
      const double s = need(sigma, "sigma", method);
      return std::sqrt(s * s * lt / (8.0 * t)) * llt;
    }
    case LimitingMethod::kHrms:
    case LimitingMethod::kBernStch: {
      const double s = need(sigma, "sigma", method);
      return std::sqrt(2.0 * s * s * llt / t);
    }
    case LimitingMethod::kRobbins:
    case LimitingMethod::kBern: {
      const double s = need(sigma, "sigma", method);
      return std::sqrt(s * s * lt / t);
    }
  }
  return 0.0;
}

double limiting_width(const LimitingWidthRow& row, double t) { return row.value_at(t); }

}  // namespace ebcs
