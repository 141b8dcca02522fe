#pragma once

// Closed-form confidence sequences from prior work used as comparison points:
//   WSR     - predictable plug-in empirical Bernstein (constant mean only),
//   HRMS    - stitched empirical Bernstein with iterated-logarithm rate,
//   Hoeff   - predictable plug-in Hoeffding for sigma-sub-Gaussian data,
//   Robbins - normal mixture for sigma-sub-Gaussian data.

#include <cstdint>

#include "ebcs/interval.hpp"

namespace ebcs {

struct WsrConfig {
  double alpha = 0.05;
  /// Drop log(2/alpha) from lambda_t (the alpha-free schedule).
  bool alpha_free_lambda = false;

  void validate() const;
};

struct WsrState {
  std::int64_t t = 0;
  double sum_lambda = 0.0;
  double sum_lambda_x = 0.0;
  double sum_vpsi = 0.0;      // sum (x_i - mu_hat_{i-1})^2 psi_E(lambda_i)
  double sum_x = 0.0;
  double sum_sq_dev = 0.0;    // sum (x_i - mu_hat_i)^2
  double mu_hat = 0.5;        // (1/2 + sum x) / (t + 1)
  double sigma2_hat = 0.25;   // (1/4 + sum_sq_dev) / (t + 1)
  double last_lambda = 0.0;
};

/// lambda_t = min(1/2, sqrt(2 log(2/alpha) / (sigma2_hat_{t-1} t log(1 + t)))).
double wsr_next_lambda(const WsrState& state, const WsrConfig& config);
void update_in_place(WsrState& state, const WsrConfig& config, double x);
Interval wsr_interval(const WsrState& state, const WsrConfig& config);

struct HrmsConfig {
  double alpha = 0.05;
  double eta = 2.0;
  double s = 1.4;

  void validate() const;
};

struct HrmsState {
  std::int64_t t = 0;
  double sum_sq_resid = 0.0;  // sum (x_i - xhat_i)^2
  double v_hat = 1.0;         // max(sum_sq_resid, 1)
  double predictor_sum = 0.5;
  double x_hat_t = 0.5;       // smoothed running mean (1/2 + S_t)/(t + 1); also xhat_{t+1}
};

void update_in_place(HrmsState& state, double x);
/// H_t = s log log(eta V_t) + log(2 zeta(s) / (alpha log^s eta)).
double hrms_boundary_log_term(double v_hat, const HrmsConfig& config);
Interval hrms_interval(const HrmsState& state, const HrmsConfig& config);

struct SubGaussianConfig {
  double sigma = 0.5;
  double a = 1.0;
  double alpha = 0.05;
  bool alpha_free_lambda = false;

  void validate() const;
};

struct HoeffdingState {
  std::int64_t t = 0;
  double sum_lambda = 0.0;
  double sum_lambda_x = 0.0;
  double sum_lambda_sq = 0.0;
};

/// lambda_t = sqrt(2 log(2/alpha) / (sigma^2 t log(t + 1))), uncapped.
double hoeffding_lambda(std::int64_t t, const SubGaussianConfig& config);
void update_in_place(HoeffdingState& state, const SubGaussianConfig& config, double x);
Interval hoeffding_interval(const HoeffdingState& state, const SubGaussianConfig& config);

struct RobbinsState {
  std::int64_t t = 0;
  double s_t = 0.0;
};

void update_in_place(RobbinsState& state, double x);
/// sqrt(2(1 + a t sigma^2)/(a t^2) (log(1/alpha) + log(1 + a t sigma^2)/2)).
double robbins_halfwidth(std::int64_t t, const SubGaussianConfig& config);
Interval robbins_interval(const RobbinsState& state, const SubGaussianConfig& config);

}  // namespace ebcs
