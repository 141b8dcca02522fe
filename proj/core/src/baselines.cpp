#include "ebcs/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ebcs/errors.hpp"
#include "ebcs/kernel.hpp"
#include "ebcs/stitched.hpp"

namespace ebcs {

namespace {

void check_observation(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("observation " + std::to_string(x) + " outside [0, 1]");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
}

void require_started(std::int64_t t) {
  if (t < 1) throw DomainError("interval requested before any observation");
}

}  // namespace

// ---- WSR -------------------------------------------------------------------

void WsrConfig::validate() const { check_alpha(alpha); }

double wsr_next_lambda(const WsrState& state, const WsrConfig& config) {
  const double t = static_cast<double>(state.t + 1);
  const double numer = config.alpha_free_lambda ? 2.0 : 2.0 * std::log(2.0 / config.alpha);
  return std::min(0.5, std::sqrt(numer / (state.sigma2_hat * t * std::log1p(t))));
}

void update_in_place(WsrState& state, const WsrConfig& config, double x) {
  check_observation(x);
  const double lambda = wsr_next_lambda(state, config);
  const double resid = x - state.mu_hat;  // mu_hat_{t-1}
  state.t += 1;
  state.sum_lambda += lambda;
  state.sum_lambda_x += lambda * x;
  state.sum_vpsi += resid * resid * psi_e(lambda);
  state.sum_x += x;
  state.mu_hat = (0.5 + state.sum_x) / static_cast<double>(state.t + 1);
  const double dev = x - state.mu_hat;
  state.sum_sq_dev += dev * dev;
  state.sigma2_hat = (0.25 + state.sum_sq_dev) / static_cast<double>(state.t + 1);
  state.last_lambda = lambda;
}

Interval wsr_interval(const WsrState& state, const WsrConfig& config) {
  require_started(state.t);
  const double center = state.sum_lambda_x / state.sum_lambda;
  const double w = (std::log(2.0 / config.alpha) + state.sum_vpsi) / state.sum_lambda;
  return Interval::centered(center, w, state.t, true);
}

// ---- HRMS ------------------------------------------------------------------

void HrmsConfig::validate() const {
  check_alpha(alpha);
  if (!(eta > 1.0)) throw ConfigError("eta must exceed 1");
  if (!(s > 1.0)) throw ConfigError("s must exceed 1");
}

void update_in_place(HrmsState& state, double x) {
  check_observation(x);
  const double resid = x - state.x_hat_t;
  state.t += 1;
  state.sum_sq_resid += resid * resid;
  state.v_hat = std::max(state.sum_sq_resid, 1.0);
  state.predictor_sum += x;
  state.x_hat_t = state.predictor_sum / static_cast<double>(state.t + 1);
}

double hrms_boundary_log_term(double v_hat, const HrmsConfig& config) {
  thread_local double cached_s = 0.0;
  thread_local double cached_zeta = 0.0;
  if (config.s != cached_s) {
    cached_zeta = zeta(config.s);
    cached_s = config.s;
  }
  const double log_eta = std::log(config.eta);
  return config.s * std::log(std::log(config.eta * v_hat)) +
         std::log(2.0 * cached_zeta / (config.alpha * std::pow(log_eta, config.s)));
}

Interval hrms_interval(const HrmsState& state, const HrmsConfig& config) {
  require_started(state.t);
  const double k1 = (std::pow(config.eta, 0.25) + std::pow(config.eta, -0.25)) / std::sqrt(2.0);
  const double k2 = (std::sqrt(config.eta) + 1.0) / 2.0;
  const double h = hrms_boundary_log_term(state.v_hat, config);
  const double w = (k1 * std::sqrt(state.v_hat * h) + k2 * h) / static_cast<double>(state.t);
  return Interval::centered(state.x_hat_t, w, state.t, true);
}

// ---- sub-Gaussian baselines -------------------------------------------------

void SubGaussianConfig::validate() const {
  check_alpha(alpha);
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (!(a > 0.0)) throw ConfigError("a must be positive");
}

double hoeffding_lambda(std::int64_t t, const SubGaussianConfig& config) {
  const double td = static_cast<double>(t);
  const double numer = config.alpha_free_lambda ? 2.0 : 2.0 * std::log(2.0 / config.alpha);
  return std::sqrt(numer / (config.sigma * config.sigma * td * std::log1p(td)));
}

void update_in_place(HoeffdingState& state, const SubGaussianConfig& config, double x) {
  const double lambda = hoeffding_lambda(state.t + 1, config);
  state.t += 1;
  state.sum_lambda += lambda;
  state.sum_lambda_x += lambda * x;
  state.sum_lambda_sq += lambda * lambda;
}

Interval hoeffding_interval(const HoeffdingState& state, const SubGaussianConfig& config) {
  config.validate();
  require_started(state.t);
  const double center = state.sum_lambda_x / state.sum_lambda;
  const double w =
      (std::log(2.0 / config.alpha) + 0.5 * config.sigma * config.sigma * state.sum_lambda_sq) / state.sum_lambda;
  return Interval::centered(center, w, state.t, true);
}

void update_in_place(RobbinsState& state, double x) {
  state.t += 1;
  state.s_t += x;
}

double robbins_halfwidth(std::int64_t t, const SubGaussianConfig& config) {
  const double td = static_cast<double>(t);
  const double u0 = 1.0 + config.a * td * config.sigma * config.sigma;
  return std::sqrt(2.0 * u0 / (config.a * td * td) * (std::log(1.0 / config.alpha) + 0.5 * std::log(u0)));
}

Interval robbins_interval(const RobbinsState& state, const SubGaussianConfig& config) {
  config.validate();
  require_started(state.t);
  return Interval::centered(state.s_t / static_cast<double>(state.t), robbins_halfwidth(state.t, config), state.t,
                            true);
}

}  // namespace ebcs
