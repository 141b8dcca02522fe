#pragma once

// Limiting-width formulas and the residual functional E psi_E(|X - mu|)
// that governs the width of the empirical Bernstein sequences.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ebcs/streams.hpp"

namespace ebcs {

/// E psi_E(|X - mu|): closed form for discrete laws, adaptive quadrature
/// (absolute tolerance 1e-9) for continuous ones. Throws ConfigError for
/// nonstationary scenarios.
double expected_psi_e(const DistributionSpec& dist);

/// A_t = sqrt(2 u log t / t). Throws DomainError for t < 3 or u <= 0.
double a_t_apx(double t, double u);
/// R_t = W / A_t.
double r_t(double halfwidth, double t, double u);
/// (2 U_t / (t u)) (log(1/alpha)/log t + 1/2), the leading terms of R_t^2.
double r_t_squared_prediction(double u_t, double t, double u, double alpha);

enum class WsrVariant { kAlpha, kNoAlpha };

/// (sigma/2) sqrt(log(2/alpha) log t / (2t)) (1 + log log t), or for the
/// alpha-free schedule (1/2) sqrt(sigma^2 log t / (2t)) (log(2/alpha) + log log t).
/// Throws DomainError for t < 16.
double a_t_wsr(double t, double sigma, double alpha, WsrVariant variant = WsrVariant::kAlpha);

/// C_mu = psi_E(g)/g^2 with g = max(mu, 1 - mu).
double psi_sigma_ratio_bound(double mu);
/// X = 1 with probability eps and (mu - eps)/(1 - eps) otherwise.
DistributionSpec two_point_dist(double mu, double eps);

enum class LimitingMethod {
  kApx, kStch, kWsrAlpha, kWsrNoAlpha, kHrms, kHoeffAlpha, kHoeffNoAlpha, kRobbins, kBern, kBernStch
};

struct LimitingWidthRow {
  LimitingMethod method = LimitingMethod::kApx;
  std::optional<double> alpha;
  std::optional<double> sigma;  // standard deviation or sub-Gaussian proxy
  std::optional<double> u;      // E psi_E(|X - mu|)

  /// Throws ConfigError if a parameter the row needs is missing, DomainError for t < 3.
  double value_at(double t) const;
  std::string name() const;
};

const std::vector<LimitingMethod>& all_limiting_methods();
std::string to_string(LimitingMethod m);
double limiting_width(const LimitingWidthRow& row, double t);

}  // namespace ebcs
