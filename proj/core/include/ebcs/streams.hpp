#pragma once

// Synthetic scenarios with their exact average-conditional-mean paths, matrix
// generators, and CSV ingestion for user data.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ebcs/matrix.hpp"
#include "ebcs/rng.hpp"

namespace ebcs {

enum class DistKind { kBernoulli, kBeta, kUniform, kTwoPoint, kPointMass, kSwitch, kSinusoid };

struct DistributionSpec {
  DistKind kind = DistKind::kBernoulli;
  double p = 0.5;       // bernoulli
  double a = 1.0;       // beta
  double b = 1.0;       // beta
  double mu = 0.5;      // two-point, point mass
  double eps = 0.01;    // two-point: P(X = 1)
  double p1 = 0.8;      // switch: before
  double p2 = 0.2;      // switch: after
  double frac = 0.1;    // switch point as a fraction of the horizon
  double center = 0.5;  // sinusoid
  double amplitude = 0.4;
  double period = 0.0;  // sinusoid period; 0 means horizon / 4

  /// Parses "bernoulli:0.5", "beta:5,2", "uniform", "two-point:0.3,0.01",
  /// "point:0.3", "switch:0.8,0.2,0.1", "sinusoid[:center,amplitude,period]".
  static DistributionSpec parse(const std::string& text);
  std::string describe() const;
  void validate() const;

  /// Whether E[X_t | past] does not depend on t.
  bool stationary() const;
  /// Conditional mean of observation t (1-based) in a run of the given horizon.
  double step_mean(std::int64_t t, std::int64_t horizon) const;
  /// Mean of a stationary distribution.
  double mean() const;
  /// Variance of a stationary distribution.
  double variance() const;

  /// One draw given the step's conditional mean parameter.
  double draw(CounterRng& rng, std::int64_t t, std::int64_t horizon) const;
};

/// Per-step conditional means m_t and their running averages mu_t.
struct MeanPath {
  std::vector<double> step;     // m_1, ..., m_T
  std::vector<double> average;  // mu_t = t^-1 sum_{j<=t} m_j
};

struct ScalarPath {
  std::vector<double> x;
  MeanPath means;
};

MeanPath mean_path(const DistributionSpec& spec, std::int64_t horizon);
ScalarPath sample_path(const DistributionSpec& spec, std::int64_t horizon, std::uint64_t seed,
                       std::uint64_t replication = 0);

enum class MatrixGenKind { kDiagonalBernoulli, kRotatedBeta };

struct MatrixGenSpec {
  MatrixGenKind kind = MatrixGenKind::kDiagonalBernoulli;
  std::size_t d = 1;
  /// diagonal-bernoulli: per-coordinate p, cycled over coordinates.
  std::vector<double> p{0.5};
  /// rotated-beta: per-coordinate (a, b), cycled over coordinates.
  std::vector<std::pair<double, double>> ab{{5.0, 2.0}, {2.0, 5.0}, {1.0, 1.0}};
  /// Seed of the fixed orthogonal basis for rotated-beta.
  std::uint64_t basis_seed = 0x5eedULL;

  /// Parses "diagonal-bernoulli[:p1,p2,...]" or "rotated-beta[:a1,b1,a2,b2,...]".
  static MatrixGenSpec parse(const std::string& text, std::size_t d);
  std::string describe() const;
  void validate() const;
};

class MatrixGenerator {
 public:
  MatrixGenerator(MatrixGenSpec spec, std::uint64_t seed, std::uint64_t replication = 0);

  SymMatrix next();
  const SymMatrix& mean() const { return mean_; }
  const SymMatrix& basis() const { return basis_; }
  const MatrixGenSpec& spec() const { return spec_; }

 private:
  MatrixGenSpec spec_;
  CounterRng rng_;
  SymMatrix basis_;
  SymMatrix mean_;
};

/// Random orthogonal d x d matrix (Gram-Schmidt on Gaussian columns).
SymMatrix random_orthogonal(std::size_t d, std::uint64_t seed);

/// One value in [0, 1] per line; blank lines are skipped. Errors carry the
/// 1-based line number.
std::vector<double> ingest_csv(const std::filesystem::path& path);
std::vector<double> parse_scalar_csv(std::istream& in);

/// Header "d=<d>", then one row of d^2 comma-separated values per step.
std::vector<SymMatrix> ingest_matrix_csv(const std::filesystem::path& path);
std::vector<SymMatrix> parse_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const std::vector<SymMatrix>& stream);

}  // namespace ebcs
