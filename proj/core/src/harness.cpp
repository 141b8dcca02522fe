#include "ebcs/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "ebcs/asymptotics.hpp"
#include "ebcs/eb.hpp"
#include "ebcs/errors.hpp"
#include "ebcs/kernel.hpp"

namespace ebcs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double median(std::vector<double> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
  if (v.empty()) return kNaN;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

void require_positive(std::int64_t v, const char* what) {
  if (v < 1) throw ConfigError(std::string(what) + " must be at least 1");
}

void check_sigma(const std::vector<Method>& methods, const MethodParams& params) {
  for (Method m : methods) {
    if (needs_sigma(m) && !params.sigma) throw ConfigError(to_string(m) + " needs --sigma");
  }
}

void finish_rates(CoverageReport& report) {
  const auto r = static_cast<double>(report.replications);
  for (auto& m : report.methods) {
    m.rate = static_cast<double>(m.misses) / r;
    m.standard_error = std::sqrt(m.rate * (1.0 - m.rate) / r);
  }
}

}  // namespace

Source scenario_source(const DistributionSpec& spec, std::int64_t horizon, std::uint64_t seed) {
  auto path = sample_path(spec, horizon, seed);
  return {std::move(path.x), std::move(path.means), spec.describe()};
}

Source csv_source(const std::string& path) { return {ingest_csv(path), std::nullopt, path}; }

std::vector<std::int64_t> log_grid(std::int64_t horizon, int per_decade) {
  require_positive(horizon, "horizon");
  if (per_decade < 1 || per_decade > 64) throw ConfigError("points per decade must lie in [1, 64]");
  std::vector<std::int64_t> grid;
  const double decades = std::log10(static_cast<double>(horizon));
  const auto steps = static_cast<int>(std::ceil(decades * per_decade));
  for (int k = 0; k <= steps; ++k) {
    const auto t = static_cast<std::int64_t>(std::llround(std::pow(10.0, static_cast<double>(k) / per_decade)));
    if (t > horizon) break;
    if (grid.empty() || t > grid.back()) grid.push_back(t);
  }
  if (grid.back() != horizon) grid.push_back(horizon);
  return grid;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// ---- track -----------------------------------------------------------------------

void run_track(std::ostream& out, const Source& source, const std::vector<Method>& methods,
               const MethodParams& params, const TrackOptions& options) {
  check_sigma(methods, params);
  if (options.stride < 1) throw ConfigError("stride must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::unique_ptr<Tracker>> trackers;
  for (Method m : methods) trackers.push_back(make_tracker(m, params));

  out << std::setprecision(17);
  out << "t,method,center,lo,hi,halfwidth,valid,mu_t,covered\n";
  const auto horizon = static_cast<std::int64_t>(source.x.size());
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const double x = source.x[static_cast<std::size_t>(t - 1)];
    for (auto& tr : trackers) tr->update(x);
    if (t % options.stride != 0 && t != horizon) continue;
    for (std::size_t k = 0; k < trackers.size(); ++k) {
      const Interval iv = trackers[k]->interval();
      out << t << ',' << to_string(methods[k]) << ',' << iv.center << ',' << iv.lo << ',' << iv.hi << ','
          << iv.halfwidth << ',' << (iv.valid ? 1 : 0) << ',';
      if (source.means) {
        const double mu = source.means->average[static_cast<std::size_t>(t - 1)];
        out << mu << ',' << (iv.contains(mu) ? 1 : 0);
      } else {
        out << ',';
      }
      out << '\n';
    }
  }
  out << "# source=" << source.description;
  if (options.seed) out << " seed=" << *options.seed;
  out << " alpha=" << params.alpha << " kappa=" << params.kappa << " eta=" << params.eta << " s=" << params.s
      << " l0=" << params.l0;
  if (params.sigma) out << " sigma=" << *params.sigma << " a=" << params.a;
  if (params.intersect) out << " intersect=1";
  out << '\n';
  if (options.timing) {
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
    out << "# wall_seconds=" << wall.count() << '\n';
  }
}

// ---- compare ---------------------------------------------------------------------

CompareResult compare(const DistributionSpec& spec, const std::vector<Method>& methods, const MethodParams& params,
                      const CompareOptions& options) {
  check_sigma(methods, params);
  require_positive(options.reps, "reps");
  CompareResult result;
  result.grid = log_grid(options.horizon, options.per_decade);
  const std::size_t g = result.grid.size();
  const std::size_t nm = methods.size();
  const auto reps = static_cast<std::size_t>(options.reps);

  // width[rep][method * g + k]
  std::vector<std::vector<double>> width(reps, std::vector<double>(nm * g));
  std::vector<std::vector<char>> valid(reps, std::vector<char>(nm * g));
  std::vector<std::vector<double>> u(reps, std::vector<double>(g));

  EbConfig eb_config;
  eb_config.alpha = params.alpha;
  eb_config.kappa = params.kappa;
  eb_config.validate();

  parallel_for(reps, options.threads, [&](std::size_t r) {
    std::vector<std::unique_ptr<Tracker>> trackers;
    for (Method m : methods) trackers.push_back(make_tracker(m, params));
    EbState eb = new_state(eb_config);
    CounterRng rng(options.seed, r);
    std::size_t k = 0;
    for (std::int64_t t = 1; t <= options.horizon && k < g; ++t) {
      const double x = spec.draw(rng, t, options.horizon);
      for (auto& tr : trackers) tr->update(x);
      update_in_place(eb, eb_config, x);
      if (t != result.grid[k]) continue;
      for (std::size_t m = 0; m < nm; ++m) {
        const Interval iv = trackers[m]->interval();
        width[r][m * g + k] = iv.halfwidth;
        valid[r][m * g + k] = iv.valid ? 1 : 0;
      }
      u[r][k] = eb.u_t;
      ++k;
    }
  });

  for (std::size_t m = 0; m < nm; ++m) {
    CompareCurve curve{methods[m], std::vector<double>(g), std::vector<double>(g)};
    for (std::size_t k = 0; k < g; ++k) {
      std::vector<double> col(reps);
      double nvalid = 0.0;
      for (std::size_t r = 0; r < reps; ++r) {
        col[r] = width[r][m * g + k];
        nvalid += valid[r][m * g + k];
      }
      curve.median_halfwidth[k] = median(std::move(col));
      curve.valid_fraction[k] = nvalid / static_cast<double>(reps);
    }
    result.curves.push_back(std::move(curve));
  }
  result.median_u_t.resize(g);
  for (std::size_t k = 0; k < g; ++k) {
    std::vector<double> col(reps);
    for (std::size_t r = 0; r < reps; ++r) col[r] = u[r][k];
    result.median_u_t[k] = median(std::move(col));
  }
  return result;
}

void write_compare_csv(std::ostream& out, const CompareResult& result) {
  out << std::setprecision(17);
  out << "t,log10_t,method,median_halfwidth,log10_median_halfwidth,valid_fraction,median_u_t,median_u_over_t\n";
  for (std::size_t k = 0; k < result.grid.size(); ++k) {
    const auto t = static_cast<double>(result.grid[k]);
    for (const auto& c : result.curves) {
      out << result.grid[k] << ',' << std::log10(t) << ',' << to_string(c.method) << ',' << c.median_halfwidth[k]
          << ',' << std::log10(c.median_halfwidth[k]) << ',' << c.valid_fraction[k] << ',' << result.median_u_t[k]
          << ',' << result.median_u_t[k] / t << '\n';
    }
  }
}

// ---- coverage --------------------------------------------------------------------

CoverageReport run_coverage(const DistributionSpec& spec, const std::vector<Method>& methods,
                            const MethodParams& params, const CoverageOptions& options) {
  check_sigma(methods, params);
  require_positive(options.reps, "reps");
  require_positive(options.horizon, "horizon");
  spec.validate();
  if (params.intersect && !spec.stationary()) {
    throw ConfigError("the running intersection assumes a constant mean; disable it for drifting scenarios");
  }
  const MeanPath path = mean_path(spec, options.horizon);
  const auto reps = static_cast<std::size_t>(options.reps);
  const std::size_t nm = methods.size();
  std::vector<std::vector<char>> missed(reps, std::vector<char>(nm, 0));

  parallel_for(reps, options.threads, [&](std::size_t r) {
    std::vector<std::unique_ptr<Tracker>> trackers;
    for (Method m : methods) trackers.push_back(make_tracker(m, params));
    CounterRng rng(options.seed, r);
    auto& miss = missed[r];
    for (std::int64_t t = 1; t <= options.horizon; ++t) {
      const double x = spec.draw(rng, t, options.horizon);
      const double mu = path.average[static_cast<std::size_t>(t - 1)];
      for (std::size_t m = 0; m < nm; ++m) {
        trackers[m]->update(x);
        if (!miss[m] && trackers[m]->valid() && !trackers[m]->contains(mu)) miss[m] = 1;
      }
    }
  });

  CoverageReport report;
  report.replications = options.reps;
  report.horizon = options.horizon;
  report.alpha = params.alpha;
  report.scenario = spec.describe();
  for (std::size_t m = 0; m < nm; ++m) {
    MethodCoverage c;
    c.method = to_string(methods[m]);
    for (std::size_t r = 0; r < reps; ++r) c.misses += missed[r][m];
    report.methods.push_back(c);
  }
  finish_rates(report);
  return report;
}

void write_coverage_csv(std::ostream& out, const CoverageReport& report) {
  out << std::setprecision(17);
  out << "scenario,method,replications,horizon,misses,miscoverage_rate,standard_error,alpha\n";
  for (const auto& m : report.methods) {
    out << report.scenario << ',' << m.method << ',' << report.replications << ',' << report.horizon << ','
        << m.misses << ',' << m.rate << ',' << m.standard_error << ',' << report.alpha << '\n';
  }
}

// ---- kappa sweep -----------------------------------------------------------------

KappaSweepResult kappa_sweep(const DistributionSpec& spec, double alpha, const KappaSweepOptions& options) {
  if (options.kappas.empty()) throw ConfigError("kappa list is empty");
  for (double k : options.kappas) {
    if (!(k > 0.0)) throw ConfigError("kappa values must be positive");
  }
  require_positive(options.reps, "reps");
  KappaSweepResult result;
  result.grid = log_grid(options.horizon, options.per_decade);
  const std::size_t g = result.grid.size();
  const std::size_t nk = options.kappas.size();
  const auto reps = static_cast<std::size_t>(options.reps);
  std::vector<std::vector<double>> width(reps, std::vector<double>(nk * g));

  std::vector<EbConfig> configs(nk);
  for (std::size_t j = 0; j < nk; ++j) {
    configs[j].alpha = alpha;
    configs[j].kappa = options.kappas[j];
    configs[j].validate();
  }

  parallel_for(reps, options.threads, [&](std::size_t r) {
    std::vector<EbState> states;
    for (const auto& c : configs) states.push_back(new_state(c));
    CounterRng rng(options.seed, r);
    std::size_t k = 0;
    for (std::int64_t t = 1; t <= options.horizon && k < g; ++t) {
      const double x = spec.draw(rng, t, options.horizon);
      for (std::size_t j = 0; j < nk; ++j) update_in_place(states[j], configs[j], x);
      if (t != result.grid[k]) continue;
      for (std::size_t j = 0; j < nk; ++j) width[r][j * g + k] = interval_mix(states[j], configs[j]).halfwidth;
      ++k;
    }
  });

  for (std::size_t j = 0; j < nk; ++j) {
    KappaCurve curve{options.kappas[j], kappa_z(options.kappas[j]), std::vector<double>(g)};
    for (std::size_t k = 0; k < g; ++k) {
      std::vector<double> col(reps);
      for (std::size_t r = 0; r < reps; ++r) col[r] = width[r][j * g + k];
      curve.median_halfwidth[k] = median(std::move(col));
    }
    result.curves.push_back(std::move(curve));
  }
  return result;
}

void write_kappa_sweep_csv(std::ostream& out, const KappaSweepResult& result) {
  out << std::setprecision(17);
  out << "kappa,kappa_z,t,median_halfwidth\n";
  for (const auto& c : result.curves) {
    for (std::size_t k = 0; k < result.grid.size(); ++k) {
      out << c.kappa << ',' << c.kappa_z << ',' << result.grid[k] << ',' << c.median_halfwidth[k] << '\n';
    }
  }
}

// ---- matrix ----------------------------------------------------------------------

MatrixMethod parse_matrix_method(const std::string& name) {
  if (name == "mat_apx") return MatrixMethod::kMatApx;
  if (name == "wang_ramdas") return MatrixMethod::kWangRamdas;
  throw ConfigError("unknown matrix method '" + name + "'");
}

std::string to_string(MatrixMethod m) { return m == MatrixMethod::kMatApx ? "mat_apx" : "wang_ramdas"; }

std::vector<MatrixMethod> parse_matrix_methods(const std::string& list) {
  std::vector<MatrixMethod> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = list.find(',', start);
    const auto m = parse_matrix_method(list.substr(start, comma == std::string::npos ? comma : comma - start));
    if (std::find(out.begin(), out.end(), m) != out.end()) throw ConfigError("matrix method listed twice");
    out.push_back(m);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

MatrixSource generator_source(const MatrixGenSpec& spec, std::int64_t horizon, std::uint64_t seed,
                              std::uint64_t replication) {
  require_positive(horizon, "horizon");
  MatrixGenerator gen(spec, seed, replication);
  MatrixSource src{{}, gen.mean(), spec.describe()};
  src.x.reserve(static_cast<std::size_t>(horizon));
  for (std::int64_t t = 0; t < horizon; ++t) src.x.push_back(gen.next());
  return src;
}

namespace {

// Runs both matrix methods side by side over a stream.
class MatrixRunner {
 public:
  MatrixRunner(const std::vector<MatrixMethod>& methods, std::size_t d, double alpha, double kappa)
      : methods_(methods) {
    eb_config_.alpha = alpha;
    eb_config_.kappa = kappa;
    eb_config_.d = d;
    wr_config_.alpha = alpha;
    wr_config_.d = d;
    eb_ = new_matrix_state(eb_config_);
    wr_ = new_wang_ramdas_state(wr_config_);
    for (auto m : methods) {
      if (m == MatrixMethod::kMatApx) use_eb_ = true;
      if (m == MatrixMethod::kWangRamdas) use_wr_ = true;
    }
  }

  void update(const SymMatrix& x) {
    if (use_eb_) matrix_update_in_place(eb_, eb_config_, x);
    if (use_wr_) wang_ramdas_update_in_place(wr_, wr_config_, x);
  }

  MatrixBound bound(MatrixMethod m) const {
    return m == MatrixMethod::kMatApx ? matrix_halfwidth(eb_, eb_config_) : wang_ramdas_halfwidth(wr_, wr_config_);
  }

  double deviation(MatrixMethod m, const SymMatrix& mean) const {
    const SymMatrix est = m == MatrixMethod::kMatApx ? sample_mean(eb_) : weighted_mean(wr_);
    return gamma_max(est - mean);
  }

  const std::vector<MatrixMethod>& methods() const { return methods_; }

 private:
  std::vector<MatrixMethod> methods_;
  MatrixEbConfig eb_config_;
  WangRamdasConfig wr_config_;
  MatrixEbState eb_;
  WangRamdasState wr_;
  bool use_eb_ = false;
  bool use_wr_ = false;
};

}  // namespace

void run_matrix_track(std::ostream& out, const MatrixSource& source, const std::vector<MatrixMethod>& methods,
                      double alpha, double kappa, const TrackOptions& options) {
  if (source.x.empty()) throw DomainError("empty matrix stream");
  if (options.stride < 1) throw ConfigError("stride must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t d = source.x.front().dim();
  MatrixRunner runner(methods, d, alpha, kappa);
  out << std::setprecision(17);
  out << "t,method,gamma_max_deviation,halfwidth,valid,covered,u_t\n";
  const auto horizon = static_cast<std::int64_t>(source.x.size());
  for (std::int64_t t = 1; t <= horizon; ++t) {
    runner.update(source.x[static_cast<std::size_t>(t - 1)]);
    if (t % options.stride != 0 && t != horizon) continue;
    for (auto m : methods) {
      const MatrixBound b = runner.bound(m);
      out << t << ',' << to_string(m) << ',';
      if (source.mean) {
        const double dev = runner.deviation(m, *source.mean);
        out << dev << ',' << b.halfwidth << ',' << (b.valid ? 1 : 0) << ',' << (std::abs(dev) <= b.halfwidth ? 1 : 0);
      } else {
        out << ',' << b.halfwidth << ',' << (b.valid ? 1 : 0) << ',';
      }
      out << ',';
      if (m == MatrixMethod::kMatApx) out << b.u_t;
      out << '\n';
    }
  }
  out << "# source=" << source.description << " d=" << d;
  if (options.seed) out << " seed=" << *options.seed;
  out << " alpha=" << alpha << " kappa=" << kappa << '\n';
  if (options.timing) {
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
    out << "# wall_seconds=" << wall.count() << '\n';
  }
}

CoverageReport run_matrix_coverage(const MatrixGenSpec& spec, const std::vector<MatrixMethod>& methods, double alpha,
                                   double kappa, const CoverageOptions& options) {
  require_positive(options.reps, "reps");
  require_positive(options.horizon, "horizon");
  spec.validate();
  const auto reps = static_cast<std::size_t>(options.reps);
  const std::size_t nm = methods.size();
  std::vector<std::vector<char>> missed(reps, std::vector<char>(nm, 0));

  parallel_for(reps, options.threads, [&](std::size_t r) {
    MatrixGenerator gen(spec, options.seed, r);
    MatrixRunner runner(methods, spec.d, alpha, kappa);
    auto& miss = missed[r];
    for (std::int64_t t = 1; t <= options.horizon; ++t) {
      runner.update(gen.next());
      for (std::size_t m = 0; m < nm; ++m) {
        if (miss[m]) continue;
        const MatrixBound b = runner.bound(methods[m]);
        if (b.valid && std::abs(runner.deviation(methods[m], gen.mean())) > b.halfwidth) miss[m] = 1;
      }
    }
  });

  CoverageReport report;
  report.replications = options.reps;
  report.horizon = options.horizon;
  report.alpha = alpha;
  report.scenario = spec.describe() + " d=" + std::to_string(spec.d);
  for (std::size_t m = 0; m < nm; ++m) {
    MethodCoverage c;
    c.method = to_string(methods[m]);
    for (std::size_t r = 0; r < reps; ++r) c.misses += missed[r][m];
    report.methods.push_back(c);
  }
  finish_rates(report);
  return report;
}

// ---- asymptotics -----------------------------------------------------------------

std::vector<DistributionSpec> residual_table_laws() {
  return {DistributionSpec::parse("bernoulli:0.5"), DistributionSpec::parse("bernoulli:0.1"),
          DistributionSpec::parse("uniform"), DistributionSpec::parse("beta:5,2"),
          DistributionSpec::parse("beta:10,30")};
}

void write_asymptotics_csv(std::ostream& out, const std::vector<double>& times, double sigma, double alpha,
                           double u) {
  out << std::setprecision(17);
  out << "distribution,mean,sigma2_half,expected_psi_e,c_mu_sigma2\n";
  for (const auto& law : residual_table_laws()) {
    const double mu = law.mean();
    const double var = law.variance();
    out << law.describe() << ',' << mu << ',' << var / 2.0 << ',' << expected_psi_e(law) << ','
        << psi_sigma_ratio_bound(mu) * var << '\n';
  }
  out << '\n';
  out << "method,t,limiting_width\n";
  for (LimitingMethod m : all_limiting_methods()) {
    const LimitingWidthRow row{m, alpha, sigma, u};
    for (double t : times) out << row.name() << ',' << t << ',' << row.value_at(t) << '\n';
  }
}

}  // namespace ebcs
