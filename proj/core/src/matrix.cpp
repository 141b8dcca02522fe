#include "ebcs/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

#include "ebcs/eb.hpp"
#include "ebcs/errors.hpp"

namespace ebcs {

// ---- SymMatrix ---------------------------------------------------------------

SymMatrix::SymMatrix(std::size_t dim, std::vector<double> row_major) : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim * dim) throw DomainError("matrix needs " + std::to_string(dim * dim) + " entries");
}

SymMatrix SymMatrix::identity(std::size_t dim, double scale) {
  SymMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = scale;
  return m;
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& diag) {
  SymMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (other.dim_ != dim_) throw DomainError("matrix dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
  if (other.dim_ != dim_) throw DomainError("matrix dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double c) {
  for (double& v : data_) v *= c;
  return *this;
}

double SymMatrix::asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  }
  return worst;
}

double SymMatrix::max_abs() const {
  double worst = 0.0;
  for (double v : data_) worst = std::max(worst, std::abs(v));
  return worst;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(SymMatrix a, double c) { return a *= c; }

SymMatrix multiply(const SymMatrix& a, const SymMatrix& b) {
  const std::size_t d = a.dim();
  if (b.dim() != d) throw DomainError("matrix dimension mismatch");
  SymMatrix out(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < d; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

// ---- eigensolver -------------------------------------------------------------

EigDecomposition sym_eig(const SymMatrix& input, const EigOptions& options) {
  const std::size_t d = input.dim();
  SymMatrix a = input;
  // Work on the symmetric part so tiny asymmetries cannot stall convergence.
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));
  }
  SymMatrix v = SymMatrix::identity(d);

  double frob = 0.0;
  for (double x : a.data()) frob += x * x;
  frob = std::sqrt(frob);
  const double target = options.off_diagonal_tol * std::max(frob, 1e-300);

  auto off_norm = [&] {
    double off = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) off += 2.0 * a(i, j) * a(i, j);
    }
    return std::sqrt(off);
  };

  int sweep = 0;
  while (off_norm() > target) {
    if (sweep++ >= options.max_sweeps) throw NumericalError("Jacobi eigensolver did not converge");
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double tn = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(tn * tn + 1.0);
        const double s = tn * c;
        for (std::size_t r = 0; r < d; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - s * arq;
          a(r, q) = a(q, r) = s * arp + c * arq;
        }
        a(p, p) -= tn * apq;
        a(q, q) += tn * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  EigDecomposition out{std::vector<double>(d), SymMatrix(d)};
  for (std::size_t k = 0; k < d; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < d; ++r) out.basis(r, k) = v(r, order[k]);
  }
  return out;
}

double gamma_max(const SymMatrix& a) {
  if (a.dim() == 1) return a(0, 0);
  return sym_eig(a).eigenvalues.front();
}

double gamma_min(const SymMatrix& a) {
  if (a.dim() == 1) return a(0, 0);
  return sym_eig(a).eigenvalues.back();
}

SymMatrix spectral_map(const EigDecomposition& eig, const std::function<double(double)>& f) {
  const std::size_t d = eig.eigenvalues.size();
  std::vector<double> fl(d);
  for (std::size_t k = 0; k < d; ++k) fl[k] = f(eig.eigenvalues[k]);
  SymMatrix out(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < d; ++k) sum += eig.basis(i, k) * fl[k] * eig.basis(j, k);
      out(i, j) = out(j, i) = sum;
    }
  }
  return out;
}

SymMatrix spectral_map(const SymMatrix& a, const std::function<double(double)>& f) {
  if (a.dim() == 1) return SymMatrix(1, f(a(0, 0)));
  return spectral_map(sym_eig(a), f);
}

SymMatrix spectral_psi_e_abs(const SymMatrix& a) {
  return spectral_map(a, [](double lambda) { return psi_e(std::abs(lambda)); });
}

void check_spectrum(const SymMatrix& a, double lo, double hi, bool hi_inclusive) {
  const double asym = a.asymmetry();
  if (asym > 1e-12) throw DomainError("matrix is not symmetric (asymmetry " + std::to_string(asym) + ")");
  const auto eig = a.dim() == 1 ? EigDecomposition{{a(0, 0)}, SymMatrix::identity(1)} : sym_eig(a);
  // Allow eigensolver round-off at the closed ends of the range.
  const double slack = 1e-12;
  const double top = eig.eigenvalues.front();
  const double bottom = eig.eigenvalues.back();
  const bool hi_ok = hi_inclusive ? top <= hi + slack : top < hi;
  if (bottom < lo - slack || !hi_ok) {
    throw DomainError("matrix eigenvalues [" + std::to_string(bottom) + ", " + std::to_string(top) +
                      "] outside the allowed range");
  }
}

// ---- matrix EB ----------------------------------------------------------------

void MatrixEbConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ConfigError("kappa must be positive");
  if (d < 1) throw ConfigError("matrix dimension must be at least 1");
  tolerances.validate();
}

double MatrixEbConfig::log_dkz_over_alpha() const {
  return std::log(static_cast<double>(d) * kappa_z(kappa) / alpha);
}

double MatrixEbConfig::log_threshold() const {
  return log_dkz_over_alpha() + 0.5 * std::log(2.0 * std::numbers::pi);
}

MatrixEbState new_matrix_state(const MatrixEbConfig& config) {
  config.validate();
  MatrixEbState s;
  s.s_mat = SymMatrix(config.d);
  s.v_mat = SymMatrix(config.d);
  s.u_t = 1.0 / (2.0 * config.kappa * config.kappa);
  s.predictor_sum = SymMatrix::identity(config.d, 0.5);
  s.predictor = s.predictor_sum;
  return s;
}

void matrix_update_in_place(MatrixEbState& state, const MatrixEbConfig& config, const SymMatrix& x) {
  if (x.dim() != config.d) throw DomainError("observation has the wrong dimension");
  check_spectrum(x, 0.0, 1.0);
  state.t += 1;
  state.s_mat += x;
  state.v_mat += spectral_psi_e_abs(x - state.predictor);
  state.u_t = 1.0 / (2.0 * config.kappa * config.kappa) + gamma_max(state.v_mat);
  state.predictor_sum += x;
  state.predictor = state.predictor_sum * (1.0 / static_cast<double>(state.t + 1));
  state.t0_reached = state.t0_reached || hitting_condition(state.u_t, config.log_threshold());
}

MatrixEbState matrix_update(MatrixEbState state, const MatrixEbConfig& config, const SymMatrix& x) {
  matrix_update_in_place(state, config, x);
  return state;
}

MatrixBound matrix_halfwidth(const MatrixEbState& state, const MatrixEbConfig& config) {
  if (state.t < 1) throw DomainError("bound requested before any observation");
  return {state.t, state.t0_reached, closed_form_halfwidth(state.u_t, state.t, config.log_dkz_over_alpha()),
          state.u_t};
}

SymMatrix sample_mean(const MatrixEbState& state) {
  if (state.t < 1) throw DomainError("mean requested before any observation");
  return state.s_mat * (1.0 / static_cast<double>(state.t));
}

// ---- Wang-Ramdas ----------------------------------------------------------------

void WangRamdasConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (d < 1) throw ConfigError("matrix dimension must be at least 1");
}

WangRamdasState new_wang_ramdas_state(const WangRamdasConfig& config) {
  config.validate();
  WangRamdasState s;
  s.sum_lambda_x = SymMatrix(config.d);
  s.sum_psi_sq = SymMatrix(config.d);
  s.mu_hat_sum = SymMatrix::identity(config.d, 0.5);
  s.mu_hat = s.mu_hat_sum;
  return s;
}

double wang_ramdas_next_lambda(const WangRamdasState& state, const WangRamdasConfig& config) {
  const double t = static_cast<double>(state.t + 1);
  const double numer = 2.0 * std::log(2.0 * static_cast<double>(config.d) / config.alpha);
  return std::min(0.5, std::sqrt(numer / (state.v_bar * t * std::log1p(t))));
}

void wang_ramdas_update_in_place(WangRamdasState& state, const SymMatrix& x, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
  if (x.dim() != state.mu_hat.dim()) throw DomainError("observation has the wrong dimension");
  check_spectrum(x, 0.0, 1.0);
  const SymMatrix resid = x - state.mu_hat;
  state.t += 1;
  state.sum_lambda += lambda;
  state.sum_lambda_x += x * lambda;
  state.sum_psi_sq += multiply(resid, resid) * psi_e(lambda);
  state.mu_hat_sum += x;
  state.mu_hat = state.mu_hat_sum * (1.0 / static_cast<double>(state.t + 1));
  const SymMatrix dev = x - state.mu_hat;
  state.sum_sq_dev += gamma_max(multiply(dev, dev));
  state.v_bar = (0.25 + state.sum_sq_dev) / static_cast<double>(state.t + 1);
}

void wang_ramdas_update_in_place(WangRamdasState& state, const WangRamdasConfig& config, const SymMatrix& x) {
  wang_ramdas_update_in_place(state, x, wang_ramdas_next_lambda(state, config));
}

MatrixBound wang_ramdas_halfwidth(const WangRamdasState& state, const WangRamdasConfig& config) {
  if (state.t < 1) throw DomainError("bound requested before any observation");
  const double w =
      (std::log(2.0 * static_cast<double>(config.d) / config.alpha) + gamma_max(state.sum_psi_sq)) / state.sum_lambda;
  return {state.t, true, w, 0.0};
}

SymMatrix weighted_mean(const WangRamdasState& state) {
  if (state.t < 1) throw DomainError("mean requested before any observation");
  return state.sum_lambda_x * (1.0 / state.sum_lambda);
}

}  // namespace ebcs
