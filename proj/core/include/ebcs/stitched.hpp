#pragma once

// Iterated-logarithm confidence sequence obtained by applying the fixed-xi
// bound |Xbar_t - mu_t| <= xi V_t / t + log(2/alpha) / (t xi) once per
// geometric epoch [L0 eta^j, L0 eta^(j+1)) of V_t, with a union bound that
// spends alpha / h(j) on epoch j.

#include <cstdint>
#include <vector>

#include "ebcs/interval.hpp"

namespace ebcs {

/// Riemann zeta for s > 1: partial sum plus Euler-Maclaurin tail.
double zeta(double s);

enum class StitchingFunction { kZetaPoly, kCustomTable };

struct StitchConfig {
  double alpha = 0.05;
  double eta = 2.0;
  double s = 1.4;
  double l0 = 1.0;
  StitchingFunction h = StitchingFunction::kZetaPoly;
  /// h(0), h(1), ... for kCustomTable; must be increasing with sum 1/h <= 1.
  /// Beyond the table h grows geometrically from the last entry.
  std::vector<double> custom_table{};

  void validate() const;
  /// log h(j) for real j >= 0.
  double log_h(double j) const;
};

struct StitchState {
  std::int64_t t = 0;
  double s_t = 0.0;
  double v_t = 0.0;  // sum psi_E(|x_i - xhat_i|)
  double predictor_sum = 0.5;
  double next_predictor = 0.5;
};

void update_in_place(StitchState& state, double x);
StitchState update(StitchState state, double x);

/// |xi| V_t / t + log(2/alpha) / (t |xi|) for a fixed xi in (0, 1].
double fixed_xi_halfwidth(const StitchState& state, double xi, double alpha);

struct EpochParameters {
  double xi = 1.0;
  double alpha = 0.0;
};

/// xi_j = min(1, sqrt(log(2/alpha_j) / (L0 eta^(j+1)))) with alpha_j = alpha / h(j).
EpochParameters epoch_schedule(const StitchConfig& config, std::int64_t j);

/// Epoch index j(t) with V_t in [L0 eta^j, L0 eta^(j+1)); -1 while V_t < L0.
std::int64_t epoch_index(const StitchConfig& config, double v_t);

/// Whether V_t >= L0 and h(log_eta(V_t / L0)) <= (alpha/2) exp(V_t).
bool stitched_valid(const StitchConfig& config, double v_t);

/// Stitched interval: (1 + sqrt(eta))/t * sqrt(V_t log(2 h(j(t)) / alpha)),
/// using the epoch containing V_t. Invalid (vacuous) until stitched_valid.
Interval stitched_halfwidth(const StitchState& state, const StitchConfig& config);

/// The same bound with h evaluated at the real argument log_eta(V_t / L0);
/// for zeta_poly and L0 = 1 this is the explicit closed form
/// (sqrt(eta)+1)/t * sqrt(V_t (log(2 zeta(s) / (alpha log^s eta)) + s log log(eta V_t))).
Interval explicit_stitched_halfwidth(const StitchState& state, const StitchConfig& config);

}  // namespace ebcs
