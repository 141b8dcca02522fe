#pragma once

// Empirical Bernstein confidence sequences built from the truncated-Gaussian
// mixture of the supermartingale exp(xi (S_t - t m) - xi^2 V_t):
//   mix  - the exact mixture set, found by root finding,
//   unif - the same with a uniform mixing density (no kappa),
//   apx  - the closed-form superset, valid from the hitting time t0 onwards.
// All three track the average conditional mean mu_t and are centred at the
// unweighted sample mean.

#include <cstdint>

#include "ebcs/interval.hpp"
#include "ebcs/kernel.hpp"

namespace ebcs {

enum class PredictorKind { kSmoothedMean, kConstant, kExternal };

struct EbConfig {
  double alpha = 0.05;
  double kappa = 0.25;
  PredictorKind predictor = PredictorKind::kSmoothedMean;
  double constant_prediction = 0.5;  // used by kConstant, must lie in [0, 1)
  bool intersect = false;            // running intersection; valid only for a constant mean
  KernelTolerances tolerances{};

  void validate() const;
  /// log G_alpha = log(kappa Z sqrt(2 pi) / alpha).
  double log_threshold() const;
};

struct EbState {
  std::int64_t t = 0;
  double s_t = 0.0;             // sum of observations
  double u_t = 0.0;             // 1/(2 kappa^2) + sum psi_E(|x_i - xhat_i|)
  double predictor_sum = 0.5;   // 1/2 + sum of observations, for the smoothed predictor
  double next_predictor = 0.5;  // xhat_{t+1}, in [0, 1)
  bool t0_reached = false;
  Interval intersection{};      // meaningful when config.intersect

  /// V_t = U_t - 1/(2 kappa^2).
  double v_t(const EbConfig& config) const;
};

EbState new_state(const EbConfig& config);

/// Folds one observation into the state. For the external predictor,
/// `next_prediction` supplies xhat_{t+1}; it is ignored otherwise.
EbState update(EbState state, const EbConfig& config, double x, double next_prediction = 0.5);
void update_in_place(EbState& state, const EbConfig& config, double x, double next_prediction = 0.5);

/// Whether sqrt(pi/U)(exp(U/4) - 1/2) >= G for the given log G (evaluated in logs).
bool hitting_condition(double u, double log_g);
/// The hitting-time condition for the state's U_t with threshold G_alpha.
bool t0_reached(const EbState& state, const EbConfig& config);

/// (2/t) sqrt(U (l + log(2U)/2)) with l = log_kz_over_alpha - log(1 - exp(-U/4)).
double closed_form_halfwidth(double u, std::int64_t t, double log_kz_over_alpha);

/// Closed-form interval; invalid before t0. With config.intersect the running
/// intersection from t0 onwards is returned instead.
Interval interval_apx(const EbState& state, const EbConfig& config);
/// Exact mixture interval by root finding; valid for every t >= 1.
Interval interval_mix(const EbState& state, const EbConfig& config);
/// Uniform-mixture interval; vacuous while I(0; V_t) >= 2/alpha.
Interval interval_unif(const EbState& state, const EbConfig& config);

/// Membership in the exact mixture set without root finding:
/// I(S_t - t m; U_t) < G_alpha.
bool mix_contains(const EbState& state, const EbConfig& config, double m);

}  // namespace ebcs
