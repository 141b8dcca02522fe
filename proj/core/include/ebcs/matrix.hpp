#pragma once

// Matrix empirical Bernstein bound on the largest-eigenvalue deviation
// gamma_max(Xbar_t - M_t) for symmetric observations with spectrum in [0, 1],
// plus the predictable plug-in baseline of Wang and Ramdas.

#include <cstdint>
#include <functional>
#include <vector>

#include "ebcs/kernel.hpp"

namespace ebcs {

/// Dense symmetric matrix stored row-major.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim, double fill = 0.0) : dim_(dim), data_(dim * dim, fill) {}
  SymMatrix(std::size_t dim, std::vector<double> row_major);

  static SymMatrix identity(std::size_t dim, double scale = 1.0);
  static SymMatrix diagonal(const std::vector<double>& diag);

  std::size_t dim() const { return dim_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  const std::vector<double>& data() const { return data_; }

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator-=(const SymMatrix& other);
  SymMatrix& operator*=(double c);

  /// Largest |A(i,j) - A(j,i)|.
  double asymmetry() const;
  double max_abs() const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(SymMatrix a, double c);
/// Plain matrix product; the result is symmetric only when a and b commute.
SymMatrix multiply(const SymMatrix& a, const SymMatrix& b);

struct EigDecomposition {
  std::vector<double> eigenvalues;  // descending
  SymMatrix basis;                  // column k is the eigenvector of eigenvalues[k]
};

struct EigOptions {
  double off_diagonal_tol = 1e-14;
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigendecomposition. Throws NumericalError if the
/// off-diagonal mass has not vanished after max_sweeps.
EigDecomposition sym_eig(const SymMatrix& a, const EigOptions& options = {});

double gamma_max(const SymMatrix& a);
double gamma_min(const SymMatrix& a);

/// Q f(Lambda) Q^T.
SymMatrix spectral_map(const SymMatrix& a, const std::function<double(double)>& f);
SymMatrix spectral_map(const EigDecomposition& eig, const std::function<double(double)>& f);
/// psi_E(|A|); throws DomainError if some |eigenvalue| >= 1.
SymMatrix spectral_psi_e_abs(const SymMatrix& a);

/// Throws DomainError unless a is symmetric to 1e-12 with spectrum in [lo, hi].
void check_spectrum(const SymMatrix& a, double lo, double hi, bool hi_inclusive = true);

struct MatrixEbConfig {
  double alpha = 0.05;
  double kappa = 0.25;
  std::size_t d = 1;
  KernelTolerances tolerances{};

  void validate() const;
  /// log(d kappa Z / alpha).
  double log_dkz_over_alpha() const;
  /// log G_{alpha,d} = log(d kappa Z sqrt(2 pi) / alpha), used in the t0 check.
  double log_threshold() const;
};

struct MatrixEbState {
  std::int64_t t = 0;
  SymMatrix s_mat;          // sum X_i
  SymMatrix v_mat;          // sum psi_E(|X_i - Xhat_i|)
  double u_t = 0.0;         // 1/(2 kappa^2) + gamma_max(V_t)
  SymMatrix predictor_sum;  // I/2 + sum X_i
  SymMatrix predictor;      // Xhat_{t+1}
  bool t0_reached = false;
};

struct MatrixBound {
  std::int64_t t = 0;
  bool valid = false;
  double halfwidth = 0.0;
  double u_t = 0.0;
};

MatrixEbState new_matrix_state(const MatrixEbConfig& config);
void matrix_update_in_place(MatrixEbState& state, const MatrixEbConfig& config, const SymMatrix& x);
MatrixEbState matrix_update(MatrixEbState state, const MatrixEbConfig& config, const SymMatrix& x);
/// W^mat = (2/t) sqrt(U_t (l_{alpha,d} + log(2 U_t)/2)); invalid before t0.
MatrixBound matrix_halfwidth(const MatrixEbState& state, const MatrixEbConfig& config);
SymMatrix sample_mean(const MatrixEbState& state);

struct WangRamdasConfig {
  double alpha = 0.05;
  std::size_t d = 1;

  void validate() const;
};

struct WangRamdasState {
  std::int64_t t = 0;
  double sum_lambda = 0.0;
  SymMatrix sum_lambda_x;      // sum lambda_i X_i
  SymMatrix sum_psi_sq;        // sum psi_E(lambda_i) (X_i - Xhat_i)^2
  SymMatrix mu_hat;            // (I/2 + sum X_i)/(t + 1)
  SymMatrix mu_hat_sum;        // I/2 + sum X_i
  double sum_sq_dev = 0.0;     // sum gamma_max((X_i - mu_hat_i)^2)
  double v_bar = 0.25;         // (1/4 + sum_sq_dev)/(t + 1)
};

WangRamdasState new_wang_ramdas_state(const WangRamdasConfig& config);
/// lambda_t = min(1/2, sqrt(2 log(2d/alpha) / (vbar_{t-1} t log(1 + t)))).
double wang_ramdas_next_lambda(const WangRamdasState& state, const WangRamdasConfig& config);
/// Folds one observation in with an explicit lambda in (0, 1).
void wang_ramdas_update_in_place(WangRamdasState& state, const SymMatrix& x, double lambda);
void wang_ramdas_update_in_place(WangRamdasState& state, const WangRamdasConfig& config, const SymMatrix& x);
/// (log(2d/alpha) + gamma_max(sum psi_E(lambda_i)(X_i - Xhat_i)^2)) / sum lambda_i.
MatrixBound wang_ramdas_halfwidth(const WangRamdasState& state, const WangRamdasConfig& config);
SymMatrix weighted_mean(const WangRamdasState& state);

}  // namespace ebcs
