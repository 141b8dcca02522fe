#pragma once

// Experiment drivers behind the command-line tool. Each writes CSV with
// doubles printed to 17 significant digits; output depends only on the
// inputs (never on the thread count).

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ebcs/matrix.hpp"
#include "ebcs/streams.hpp"
#include "ebcs/trackers.hpp"

namespace ebcs {

/// A stream to track: observations plus, for synthetic scenarios, the true
/// average-conditional-mean path.
struct Source {
  std::vector<double> x;
  std::optional<MeanPath> means;
  std::string description;
};

Source scenario_source(const DistributionSpec& spec, std::int64_t horizon, std::uint64_t seed);
Source csv_source(const std::string& path);

/// Log-spaced integer times in [1, horizon], at most per_decade per decade,
/// always including 1 and horizon.
std::vector<std::int64_t> log_grid(std::int64_t horizon, int per_decade);

/// Runs fn(i) for i in [0, n) on up to `threads` threads.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

struct TrackOptions {
  std::int64_t stride = 1;  // emit every stride-th step (and the last)
  std::optional<std::uint64_t> seed;
  bool timing = false;
};

/// Columns t,method,center,lo,hi,halfwidth,valid,mu_t,covered. Invalid
/// intervals are reported as [0, 1]. mu_t and covered are empty for CSV input.
void run_track(std::ostream& out, const Source& source, const std::vector<Method>& methods,
               const MethodParams& params, const TrackOptions& options = {});

struct CompareOptions {
  std::int64_t horizon = 10000;
  std::int64_t reps = 20;
  std::uint64_t seed = 1;
  int per_decade = 32;
  unsigned threads = 1;
};

struct CompareCurve {
  Method method;
  std::vector<double> median_halfwidth;  // per grid point
  std::vector<double> valid_fraction;
};

struct CompareResult {
  std::vector<std::int64_t> grid;
  std::vector<CompareCurve> curves;
  std::vector<double> median_u_t;  // U_t of the kappa-mixture accumulator
};

CompareResult compare(const DistributionSpec& spec, const std::vector<Method>& methods, const MethodParams& params,
                      const CompareOptions& options);
/// Columns t,log10_t,method,median_halfwidth,log10_median_halfwidth,valid_fraction,median_u_t,median_u_over_t.
void write_compare_csv(std::ostream& out, const CompareResult& result);

struct CoverageOptions {
  std::int64_t horizon = 10000;
  std::int64_t reps = 2000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct MethodCoverage {
  std::string method;
  std::int64_t misses = 0;
  double rate = 0.0;
  double standard_error = 0.0;  // sqrt(rate (1 - rate) / R)
};

struct CoverageReport {
  std::int64_t replications = 0;
  std::int64_t horizon = 0;
  double alpha = 0.05;
  std::string scenario;
  std::vector<MethodCoverage> methods;
};

/// A replication miscovers a method if mu_t falls outside the interval at
/// some t where the method is valid.
CoverageReport run_coverage(const DistributionSpec& spec, const std::vector<Method>& methods,
                            const MethodParams& params, const CoverageOptions& options);
/// Columns scenario,method,replications,horizon,misses,miscoverage_rate,standard_error,alpha.
void write_coverage_csv(std::ostream& out, const CoverageReport& report);

struct KappaSweepOptions {
  std::vector<double> kappas{0.1, 0.25, 1.0, 10.0, 100.0};
  std::int64_t horizon = 10000;
  std::int64_t reps = 1;
  std::uint64_t seed = 1;
  int per_decade = 32;
  unsigned threads = 1;
};

struct KappaCurve {
  double kappa;
  double kappa_z;
  std::vector<double> median_halfwidth;  // exact mixture, per grid point
};

struct KappaSweepResult {
  std::vector<std::int64_t> grid;
  std::vector<KappaCurve> curves;
};

KappaSweepResult kappa_sweep(const DistributionSpec& spec, double alpha, const KappaSweepOptions& options);
/// Columns kappa,kappa_z,t,median_halfwidth.
void write_kappa_sweep_csv(std::ostream& out, const KappaSweepResult& result);

enum class MatrixMethod { kMatApx, kWangRamdas };
MatrixMethod parse_matrix_method(const std::string& name);
std::string to_string(MatrixMethod m);
std::vector<MatrixMethod> parse_matrix_methods(const std::string& list);

struct MatrixSource {
  std::vector<SymMatrix> x;
  std::optional<SymMatrix> mean;
  std::string description;
};

MatrixSource generator_source(const MatrixGenSpec& spec, std::int64_t horizon, std::uint64_t seed,
                              std::uint64_t replication = 0);

/// Columns t,method,gamma_max_deviation,halfwidth,valid,covered,u_t where the
/// deviation is gamma_max(mean - M) for the method's mean estimate and
/// covered is |deviation| <= halfwidth. Deviation and covered are empty when M
/// is unknown.
void run_matrix_track(std::ostream& out, const MatrixSource& source, const std::vector<MatrixMethod>& methods,
                      double alpha, double kappa, const TrackOptions& options = {});

CoverageReport run_matrix_coverage(const MatrixGenSpec& spec, const std::vector<MatrixMethod>& methods, double alpha,
                                   double kappa, const CoverageOptions& options);

/// Two CSV blocks separated by a blank line: the residual table
/// (distribution,mean,sigma2_half,expected_psi_e,c_mu_sigma2) and the limiting
/// widths (method,t,limiting_width) for the given sigma, alpha and u.
void write_asymptotics_csv(std::ostream& out, const std::vector<double>& times, double sigma, double alpha, double u);

/// The five laws of the residual table: Ber(0.5), Ber(0.1), Unif(0,1), Beta(5,2), Beta(10,30).
std::vector<DistributionSpec> residual_table_laws();

}  // namespace ebcs
