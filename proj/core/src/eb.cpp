#include "ebcs/eb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ebcs/errors.hpp"

namespace ebcs {

namespace {

double half_inv_kappa_sq(const EbConfig& config) { return 1.0 / (2.0 * config.kappa * config.kappa); }

// log(1 - exp(-U/4)); exactly zero once U > 200.
double log_one_minus_exp_quarter(double u) {
  if (u > 200.0) return 0.0;
  return std::log(-std::expm1(-u / 4.0));
}

void require_started(const EbState& state) {
  if (state.t < 1) throw DomainError("interval requested before any observation");
}

Interval apx_raw(const EbState& state, const EbConfig& config) {
  const double center = state.s_t / static_cast<double>(state.t);
  const double w =
      closed_form_halfwidth(state.u_t, state.t, std::log(kappa_z(config.kappa) / config.alpha));
  return Interval::centered(center, w, state.t, state.t0_reached);
}

}  // namespace

void EbConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ConfigError("kappa must be positive");
  if (predictor == PredictorKind::kConstant && !(constant_prediction >= 0.0 && constant_prediction < 1.0)) {
    throw ConfigError("constant predictor must lie in [0, 1)");
  }
  tolerances.validate();
}

double EbConfig::log_threshold() const {
  return std::log(kappa_z(kappa) * std::sqrt(2.0 * std::numbers::pi) / alpha);
}

double EbState::v_t(const EbConfig& config) const { return u_t - half_inv_kappa_sq(config); }

EbState new_state(const EbConfig& config) {
  config.validate();
  EbState s;
  s.u_t = half_inv_kappa_sq(config);
  s.next_predictor = config.predictor == PredictorKind::kConstant ? config.constant_prediction : 0.5;
  return s;
}

void update_in_place(EbState& state, const EbConfig& config, double x, double next_prediction) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("observation " + std::to_string(x) + " outside [0, 1]");
  state.t += 1;
  state.s_t += x;
  state.u_t += psi_e(std::abs(x - state.next_predictor));
  state.predictor_sum += x;
  switch (config.predictor) {
    case PredictorKind::kSmoothedMean:
      state.next_predictor = state.predictor_sum / static_cast<double>(state.t + 1);
      break;
    case PredictorKind::kConstant:
      break;
    case PredictorKind::kExternal:
      if (!(next_prediction >= 0.0 && next_prediction < 1.0)) {
        throw DomainError("external prediction must lie in [0, 1)");
      }
      state.next_predictor = next_prediction;
      break;
  }
  const bool was_reached = state.t0_reached;
  state.t0_reached = state.t0_reached || t0_reached(state, config);
  if (config.intersect && state.t0_reached) {
    const Interval cur = apx_raw(state, config);
    if (!was_reached) {
      state.intersection = cur;
    } else {
      state.intersection.lo = std::max(state.intersection.lo, cur.lo);
      state.intersection.hi = std::min(state.intersection.hi, cur.hi);
      state.intersection.t = state.t;
    }
  }
}

EbState update(EbState state, const EbConfig& config, double x, double next_prediction) {
  update_in_place(state, config, x, next_prediction);
  return state;
}

bool hitting_condition(double u, double log_g) {
  // log(exp(U/4) - 1/2) = U/4 + log1p(-exp(-U/4)/2)
  const double lhs = 0.5 * std::log(std::numbers::pi / u) + u / 4.0 + std::log1p(-0.5 * std::exp(-u / 4.0));
  return lhs >= log_g;
}

bool t0_reached(const EbState& state, const EbConfig& config) {
  return hitting_condition(state.u_t, config.log_threshold());
}

double closed_form_halfwidth(double u, std::int64_t t, double log_kz_over_alpha) {
  const double ell = log_kz_over_alpha - log_one_minus_exp_quarter(u);
  return 2.0 / static_cast<double>(t) * std::sqrt(u * (ell + 0.5 * std::log(2.0 * u)));
}

Interval interval_apx(const EbState& state, const EbConfig& config) {
  require_started(state);
  if (config.intersect && state.t0_reached) {
    Interval r = state.intersection;
    r.t = state.t;
    r.center = 0.5 * (r.lo + r.hi);
    r.halfwidth = 0.5 * (r.hi - r.lo);
    return r;
  }
  return apx_raw(state, config);
}

Interval interval_mix(const EbState& state, const EbConfig& config) {
  require_started(state);
  const double t = static_cast<double>(state.t);
  const double y = solve_radius(state.u_t, config.log_threshold(), config.tolerances);
  return Interval::centered(state.s_t / t, y / t, state.t, true);
}

Interval interval_unif(const EbState& state, const EbConfig& config) {
  require_started(state);
  const double t = static_cast<double>(state.t);
  const double center = state.s_t / t;
  const double v = state.v_t(config);
  const double log_g = std::log(2.0 / config.alpha);
  if (!(v > 0.0) || log_mixture_integral(0.0, v).log_magnitude >= log_g) {
    return Interval::vacuous(state.t, center);
  }
  const double y = solve_radius(v, log_g, config.tolerances);
  return Interval::centered(center, y / t, state.t, true);
}

bool mix_contains(const EbState& state, const EbConfig& config, double m) {
  const double y = state.s_t - static_cast<double>(state.t) * m;
  return log_mixture_integral(y, state.u_t).log_magnitude < config.log_threshold();
}

}  // namespace ebcs
