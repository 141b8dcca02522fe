#include "ebcs/stitched.hpp"

#include <cmath>
#include <string>

#include "ebcs/errors.hpp"
#include "ebcs/kernel.hpp"

namespace ebcs {

namespace {

constexpr int kZetaTerms = 1000;

double stitched_bound(const StitchState& state, const StitchConfig& config, double log_h_value) {
  const double log_two_over_alpha = std::log(2.0 / config.alpha) + log_h_value;
  return (1.0 + std::sqrt(config.eta)) / static_cast<double>(state.t) * std::sqrt(state.v_t * log_two_over_alpha);
}

}  // namespace

double zeta(double s) {
  if (!(s > 1.0)) throw DomainError("zeta: s must exceed 1, got " + std::to_string(s));
  // sum_{k<N} k^-s + N^(1-s)/(s-1) + N^-s/2 + s N^(-s-1)/12 - s(s+1)(s+2) N^(-s-3)/720
  double sum = 0.0;
  for (int k = kZetaTerms - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double n = kZetaTerms;
  const double ns = std::pow(n, -s);
  sum += n * ns / (s - 1.0) + 0.5 * ns + s * ns / (12.0 * n) - s * (s + 1.0) * (s + 2.0) * ns / (720.0 * n * n * n);
  return sum;
}

void StitchConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(eta > 1.0)) throw ConfigError("eta must exceed 1");
  if (!(l0 >= 1.0)) throw ConfigError("l0 must be at least 1");
  if (h == StitchingFunction::kZetaPoly) {
    if (!(s > 1.0)) throw ConfigError("s must exceed 1");
    return;
  }
  if (custom_table.empty()) throw ConfigError("custom stitching table is empty");
  double mass = 0.0;
  for (std::size_t j = 0; j < custom_table.size(); ++j) {
    if (!(custom_table[j] > 0.0)) throw ConfigError("stitching table entries must be positive");
    if (j > 0 && !(custom_table[j] >= custom_table[j - 1])) throw ConfigError("stitching table must be increasing");
    mass += 1.0 / custom_table[j];
  }
  // Geometric continuation with ratio 2 adds at most 1/h_last.
  mass += 1.0 / custom_table.back();
  if (mass > 1.0) throw ConfigError("stitching table violates sum 1/h(j) <= 1");
}

double StitchConfig::log_h(double j) const {
  if (h == StitchingFunction::kZetaPoly) {
    thread_local double cached_s = 0.0;
    thread_local double cached_log_zeta = 0.0;
    if (s != cached_s) {
      cached_log_zeta = std::log(zeta(s));
      cached_s = s;
    }
    return cached_log_zeta + s * std::log(j + 1.0);
  }
  const auto n = static_cast<double>(custom_table.size());
  if (j <= n - 1.0) {
    // Piecewise-linear interpolation keeps h increasing on the reals.
    const auto lo = static_cast<std::size_t>(std::floor(j));
    const double frac = j - static_cast<double>(lo);
    if (lo + 1 >= custom_table.size()) return std::log(custom_table[lo]);
    return std::log(custom_table[lo] + frac * (custom_table[lo + 1] - custom_table[lo]));
  }
  return std::log(custom_table.back()) + (j - (n - 1.0)) * std::log(2.0);
}

void update_in_place(StitchState& state, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("observation " + std::to_string(x) + " outside [0, 1]");
  state.t += 1;
  state.s_t += x;
  state.v_t += psi_e(std::abs(x - state.next_predictor));
  state.predictor_sum += x;
  state.next_predictor = state.predictor_sum / static_cast<double>(state.t + 1);
}

StitchState update(StitchState state, double x) {
  update_in_place(state, x);
  return state;
}

double fixed_xi_halfwidth(const StitchState& state, double xi, double alpha) {
  if (!(xi > 0.0 && xi <= 1.0)) throw DomainError("xi must lie in (0, 1]");
  if (state.t < 1) throw DomainError("halfwidth requested before any observation");
  const double t = static_cast<double>(state.t);
  return xi * state.v_t / t + std::log(2.0 / alpha) / (t * xi);
}

EpochParameters epoch_schedule(const StitchConfig& config, std::int64_t j) {
  if (j < 0) throw DomainError("epoch index must be nonnegative");
  const double jd = static_cast<double>(j);
  const double log_alpha_j = std::log(config.alpha) - config.log_h(jd);
  const double log_two_over_alpha_j = std::log(2.0) - log_alpha_j;
  const double xi = std::sqrt(log_two_over_alpha_j / (config.l0 * std::pow(config.eta, jd + 1.0)));
  return {std::min(1.0, xi), std::exp(log_alpha_j)};
}

std::int64_t epoch_index(const StitchConfig& config, double v_t) {
  if (!(v_t >= config.l0)) return -1;
  auto j = static_cast<std::int64_t>(std::floor(std::log(v_t / config.l0) / std::log(config.eta)));
  // Guard the floor against rounding at epoch boundaries.
  if (config.l0 * std::pow(config.eta, static_cast<double>(j)) > v_t) --j;
  if (config.l0 * std::pow(config.eta, static_cast<double>(j + 1)) <= v_t) ++j;
  return j;
}

bool stitched_valid(const StitchConfig& config, double v_t) {
  if (!(v_t >= config.l0)) return false;
  const double j = std::log(v_t / config.l0) / std::log(config.eta);
  return config.log_h(j) <= std::log(config.alpha / 2.0) + v_t;
}

Interval stitched_halfwidth(const StitchState& state, const StitchConfig& config) {
  if (state.t < 1) throw DomainError("halfwidth requested before any observation");
  const double center = state.s_t / static_cast<double>(state.t);
  if (!stitched_valid(config, state.v_t)) return Interval::vacuous(state.t, center);
  const auto j = epoch_index(config, state.v_t);
  const double w = stitched_bound(state, config, config.log_h(static_cast<double>(j)));
  return Interval::centered(center, w, state.t, true);
}

Interval explicit_stitched_halfwidth(const StitchState& state, const StitchConfig& config) {
  if (state.t < 1) throw DomainError("halfwidth requested before any observation");
  const double center = state.s_t / static_cast<double>(state.t);
  if (!stitched_valid(config, state.v_t)) return Interval::vacuous(state.t, center);
  const double j = std::log(state.v_t / config.l0) / std::log(config.eta);
  return Interval::centered(center, stitched_bound(state, config, config.log_h(j)), state.t, true);
}

}  // namespace ebcs
