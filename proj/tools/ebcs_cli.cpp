// ebcs: command-line front end for the confidence-sequence library.
//
// Exit codes: 0 success, 2 usage error, 3 data/validation error,
// 4 numerical failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ebcs/errors.hpp"
#include "ebcs/harness.hpp"
#include "ebcs/kernel.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

struct CommonFlags {
  double alpha = 0.05;
  double kappa = 0.25;
  double eta = 2.0;
  double s = 1.4;
  double l0 = 1.0;
  std::optional<double> sigma;
  double a = 1.0;
  std::uint64_t seed = 1;
  std::int64_t horizon = 10000;
  std::int64_t reps = 0;  // 0 means the subcommand default
  std::string methods;
  std::string dist;
  std::string csv;
  std::string out;
  unsigned threads = 0;
  bool intersect = false;
  bool alpha_free = false;
  bool timing = false;
  std::int64_t stride = 1;
  int per_decade = 32;

  ebcs::MethodParams params() const {
    ebcs::MethodParams p;
    p.alpha = alpha;
    p.kappa = kappa;
    p.eta = eta;
    p.s = s;
    p.l0 = l0;
    p.sigma = sigma;
    p.a = a;
    p.intersect = intersect;
    p.alpha_free_lambda = alpha_free;
    return p;
  }

  unsigned thread_count() const {
    if (threads > 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--alpha", f.alpha, "Error level in (0, 1)")->capture_default_str();
  cmd->add_option("--kappa", f.kappa, "Truncated-Gaussian mixture scale")->capture_default_str();
  cmd->add_option("--eta", f.eta, "Epoch growth factor for stch/hrms")->capture_default_str();
  cmd->add_option("--s", f.s, "Stitching exponent for stch/hrms")->capture_default_str();
  cmd->add_option("--l0", f.l0, "First epoch boundary for stch")->capture_default_str();
  cmd->add_option("--sigma", f.sigma, "Sub-Gaussian proxy for hoeff/robbins");
  cmd->add_option("--a", f.a, "Robbins mixture parameter")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  cmd->add_option("--horizon", f.horizon, "Number of observations")->capture_default_str();
  cmd->add_option("--out", f.out, "Output file (default: standard output)");
  cmd->add_option("--threads", f.threads, "Worker threads (default: hardware concurrency)");
}

ebcs::DistributionSpec dist_or_default(const std::string& text) {
  return ebcs::DistributionSpec::parse(text.empty() ? "bernoulli:0.5" : text);
}

std::vector<double> parse_doubles(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != piece.size()) throw ebcs::ConfigError("cannot parse '" + piece + "' as a number");
    out.push_back(v);
  }
  if (out.empty()) throw ebcs::ConfigError("empty number list");
  return out;
}

// Runs `body` with the stream selected by --out.
template <typename Body>
void with_output(const std::string& path, Body&& body) {
  if (path.empty()) {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(path);
  if (!file) throw ebcs::DataError("cannot open " + path + " for writing", 0);
  body(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anytime-valid empirical Bernstein confidence sequences"};
  app.require_subcommand(1);
  CommonFlags f;

  auto* track = app.add_subcommand("track", "Per-step intervals for one stream");
  add_common(track, f);
  track->add_option("--methods", f.methods, "Comma list of apx,mix,unif,stch,wsr,hrms,hoeff,robbins")->required();
  auto* track_dist = track->add_option("--dist", f.dist, "Scenario, e.g. bernoulli:0.5, beta:5,2, switch:0.8,0.2,0.1");
  auto* track_csv = track->add_option("--csv", f.csv, "CSV file with one observation in [0,1] per line");
  track_dist->excludes(track_csv);
  track->add_flag("--intersect", f.intersect, "Running intersection for apx (constant mean only)");
  track->add_flag("--alpha-free-lambda", f.alpha_free, "Use the alpha-free lambda schedule for wsr/hoeff");
  track->add_option("--stride", f.stride, "Emit every k-th step")->capture_default_str();
  track->add_flag("--timing", f.timing, "Append wall time to the footer");

  auto* cmp = app.add_subcommand("compare", "Median-over-seeds width curves on a log grid");
  add_common(cmp, f);
  cmp->add_option("--methods", f.methods, "Comma list of methods")->required();
  cmp->add_option("--dist", f.dist, "Scenario (default bernoulli:0.5)");
  cmp->add_option("--reps", f.reps, "Number of seeds (default 20)");
  cmp->add_option("--per-decade", f.per_decade, "Grid points per decade, at most 64")->capture_default_str();
  cmp->add_flag("--alpha-free-lambda", f.alpha_free, "Use the alpha-free lambda schedule for wsr/hoeff");

  auto* cov = app.add_subcommand("coverage", "Monte Carlo any-time miscoverage");
  add_common(cov, f);
  cov->add_option("--methods", f.methods, "Comma list of methods")->required();
  cov->add_option("--dist", f.dist, "Scenario (default bernoulli:0.5)");
  cov->add_option("--reps", f.reps, "Replications (default 2000)");
  cov->add_flag("--intersect", f.intersect, "Running intersection for apx (constant mean only)");
  cov->add_flag("--alpha-free-lambda", f.alpha_free, "Use the alpha-free lambda schedule for wsr/hoeff");

  std::string kappas = "0.1,0.25,1,10,100";
  auto* sweep = app.add_subcommand("kappa-sweep", "Exact-mixture widths across kappa");
  add_common(sweep, f);
  sweep->add_option("--kappas", kappas, "Comma list of kappa values")->capture_default_str();
  sweep->add_option("--dist", f.dist, "Scenario (default bernoulli:0.5)");
  sweep->add_option("--reps", f.reps, "Number of seeds (default 1)");
  sweep->add_option("--per-decade", f.per_decade, "Grid points per decade, at most 64")->capture_default_str();

  std::string generator = "diagonal-bernoulli";
  std::size_t dim = 3;
  bool matrix_coverage = false;
  auto* mat = app.add_subcommand("matrix-track", "Largest-eigenvalue bounds for a matrix stream");
  add_common(mat, f);
  mat->add_option("--methods", f.methods, "Comma list of mat_apx,wang_ramdas");
  auto* mat_gen = mat->add_option("--generator", generator, "diagonal-bernoulli[:p,...] or rotated-beta[:a,b,...]");
  auto* mat_csv = mat->add_option("--csv", f.csv, "Matrix CSV: header d=<d>, then d*d values per row");
  mat_gen->excludes(mat_csv);
  mat->add_option("--d", dim, "Matrix dimension for generators")->capture_default_str();
  mat->add_option("--stride", f.stride, "Emit every k-th step")->capture_default_str();
  mat->add_flag("--coverage", matrix_coverage, "Report Monte Carlo coverage over --reps generator streams");
  mat->add_option("--reps", f.reps, "Replications for --coverage (default 500)");
  mat->add_flag("--timing", f.timing, "Append wall time to the footer");

  double u = std::log(2.0) - 0.5;
  std::string times = "100,1000,10000,100000,1000000";
  double asym_sigma = 0.5;
  auto* asym = app.add_subcommand("asymptotics", "Residual table and limiting widths");
  asym->add_option("--alpha", f.alpha, "Error level")->capture_default_str();
  asym->add_option("--sigma", asym_sigma, "Standard deviation or sub-Gaussian proxy")->capture_default_str();
  asym->add_option("--u", u, "E psi_E(|X - mu|)")->capture_default_str();
  asym->add_option("--times", times, "Comma list of t values")->capture_default_str();
  asym->add_option("--out", f.out, "Output file (default: standard output)");

  auto* gen = app.add_subcommand("generate", "Write a synthetic stream as CSV");
  gen->add_option("--dist", f.dist, "Scalar scenario");
  gen->add_option("--generator", generator, "Matrix generator (writes a matrix CSV)");
  gen->add_option("--d", dim, "Matrix dimension")->capture_default_str();
  gen->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  gen->add_option("--horizon", f.horizon, "Number of observations")->capture_default_str();
  gen->add_option("--out", f.out, "Output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const auto params = f.params();
    if (*track) {
      if (f.dist.empty() && f.csv.empty()) throw ebcs::ConfigError("track needs --dist or --csv");
      const auto methods = ebcs::parse_methods(f.methods);
      for (auto m : methods) {
        if (ebcs::needs_sigma(m) && !f.sigma) throw ebcs::ConfigError(ebcs::to_string(m) + " needs --sigma");
      }
      ebcs::TrackOptions opts;
      opts.stride = f.stride;
      opts.timing = f.timing;
      ebcs::Source src;
      if (!f.csv.empty()) {
        src = ebcs::csv_source(f.csv);
      } else {
        src = ebcs::scenario_source(ebcs::DistributionSpec::parse(f.dist), f.horizon, f.seed);
        opts.seed = f.seed;
      }
      with_output(f.out, [&](std::ostream& os) { ebcs::run_track(os, src, methods, params, opts); });
    } else if (*cmp) {
      ebcs::CompareOptions opts;
      opts.horizon = f.horizon;
      opts.reps = f.reps > 0 ? f.reps : 20;
      opts.seed = f.seed;
      opts.per_decade = f.per_decade;
      opts.threads = f.thread_count();
      const auto result = ebcs::compare(dist_or_default(f.dist), ebcs::parse_methods(f.methods), params, opts);
      with_output(f.out, [&](std::ostream& os) { ebcs::write_compare_csv(os, result); });
    } else if (*cov) {
      ebcs::CoverageOptions opts;
      opts.horizon = f.horizon;
      opts.reps = f.reps > 0 ? f.reps : 2000;
      opts.seed = f.seed;
      opts.threads = f.thread_count();
      const auto report = ebcs::run_coverage(dist_or_default(f.dist), ebcs::parse_methods(f.methods), params, opts);
      with_output(f.out, [&](std::ostream& os) { ebcs::write_coverage_csv(os, report); });
    } else if (*sweep) {
      ebcs::KappaSweepOptions opts;
      opts.kappas = parse_doubles(kappas);
      opts.horizon = f.horizon;
      opts.reps = f.reps > 0 ? f.reps : 1;
      opts.seed = f.seed;
      opts.per_decade = f.per_decade;
      opts.threads = f.thread_count();
      const auto result = ebcs::kappa_sweep(dist_or_default(f.dist), f.alpha, opts);
      with_output(f.out, [&](std::ostream& os) { ebcs::write_kappa_sweep_csv(os, result); });
    } else if (*mat) {
      const auto methods = ebcs::parse_matrix_methods(f.methods.empty() ? "mat_apx,wang_ramdas" : f.methods);
      if (matrix_coverage) {
        if (!f.csv.empty()) throw ebcs::ConfigError("--coverage needs a generator, not --csv");
        ebcs::CoverageOptions opts;
        opts.horizon = f.horizon;
        opts.reps = f.reps > 0 ? f.reps : 500;
        opts.seed = f.seed;
        opts.threads = f.thread_count();
        const auto report = ebcs::run_matrix_coverage(ebcs::MatrixGenSpec::parse(generator, dim), methods, f.alpha,
                                                      f.kappa, opts);
        with_output(f.out, [&](std::ostream& os) { ebcs::write_coverage_csv(os, report); });
      } else {
        ebcs::TrackOptions opts;
        opts.stride = f.stride;
        opts.timing = f.timing;
        ebcs::MatrixSource src;
        if (!f.csv.empty()) {
          src = {ebcs::ingest_matrix_csv(f.csv), std::nullopt, f.csv};
        } else {
          src = ebcs::generator_source(ebcs::MatrixGenSpec::parse(generator, dim), f.horizon, f.seed);
          opts.seed = f.seed;
        }
        with_output(f.out, [&](std::ostream& os) {
          ebcs::run_matrix_track(os, src, methods, f.alpha, f.kappa, opts);
        });
      }
    } else if (*asym) {
      const auto ts = parse_doubles(times);
      with_output(f.out, [&](std::ostream& os) { ebcs::write_asymptotics_csv(os, ts, asym_sigma, f.alpha, u); });
    } else if (*gen) {
      if (gen->count("--generator") > 0 && !f.dist.empty()) {
        throw ebcs::ConfigError("generate takes --dist or --generator, not both");
      }
      if (gen->count("--generator") > 0) {
        const auto src = ebcs::generator_source(ebcs::MatrixGenSpec::parse(generator, dim), f.horizon, f.seed);
        with_output(f.out, [&](std::ostream& os) { ebcs::write_matrix_csv(os, src.x); });
      } else {
        const auto src = ebcs::scenario_source(dist_or_default(f.dist), f.horizon, f.seed);
        with_output(f.out, [&](std::ostream& os) {
          os.precision(17);
          for (double x : src.x) os << x << '\n';
        });
      }
    }
  } catch (const ebcs::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ebcs::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const ebcs::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
