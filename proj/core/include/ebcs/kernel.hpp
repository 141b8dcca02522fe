#pragma once

// Special functions and the scalar root finder shared by every confidence
// sequence in the library. All functions are pure.

namespace ebcs {

/// Natural log of a positive quantity. Callers exponentiate if they need to.
struct LogValue {
  double log_magnitude = 0.0;
};

struct KernelTolerances {
  double erf_rel_tol = 1e-13;
  double root_abs_tol = 1e-10;
  int root_max_iter = 200;

  void validate() const;
};

/// psi_E(x) = -log(1 - x) - x, the CGF of a centred unit-rate exponential.
/// Throws DomainError unless 0 <= x < 1.
double psi_e(double x);

/// Error function via Cody's rational Chebyshev approximations.
double erf(double z);
/// Complementary error function 1 - erf(z), accurate in the tails.
double erfc(double z);
/// Scaled complementary error function exp(z^2) * erfc(z), for z >= -26.
double erfcx(double z);

/// log I(y; v) with I(y; v) = int_{-1}^{1} exp(y xi - v xi^2) dxi.
///
/// Evaluated through the erf closed form, switching to the scaled erfc form
/// when sqrt(v) - |y| / (2 sqrt(v)) < 0 so that nothing overflows even when
/// y^2 / (4v) is far beyond the double exponent range. Even in y.
/// Throws DomainError if v <= 0.
LogValue log_mixture_integral(double y, double v);

/// Smallest y >= 0 with log I(y; v) = log_g, by bracket doubling from
/// max(1, v) followed by bisection.
///
/// Throws PreconditionError if log I(0; v) > log_g (returns 0 on equality)
/// and NumericalError if the iteration budget is exhausted.
double solve_radius(double v, double log_g, const KernelTolerances& tol = {});

/// kappa * Z with Z = Phi(1/kappa) - Phi(-1/kappa) = erf(1 / (kappa sqrt 2)).
double kappa_z(double kappa);

}  // namespace ebcs
