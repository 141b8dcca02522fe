#include "ebcs/streams.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string_view>

#include "ebcs/errors.hpp"

namespace ebcs {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<double> parse_list(std::string_view s, const std::string& what) {
  std::vector<double> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    const auto piece = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    double v = 0.0;
    if (!parse_double(piece, v)) throw ConfigError("cannot parse '" + std::string(piece) + "' in " + what);
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void expect_count(const std::vector<double>& v, std::size_t lo, std::size_t hi, const std::string& what) {
  if (v.size() < lo || v.size() > hi) throw ConfigError("wrong number of parameters for " + what);
}

double beta_draw(CounterRng& rng, double a, double b) {
  const double x = std::gamma_distribution<double>(a, 1.0)(rng);
  const double y = std::gamma_distribution<double>(b, 1.0)(rng);
  return x / (x + y);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

// ---- DistributionSpec --------------------------------------------------------

DistributionSpec DistributionSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  const auto v = parse_list(args, text);
  DistributionSpec s;
  if (name == "bernoulli") {
    expect_count(v, 1, 1, text);
    s.kind = DistKind::kBernoulli;
    s.p = v[0];
  } else if (name == "beta") {
    expect_count(v, 2, 2, text);
    s.kind = DistKind::kBeta;
    s.a = v[0];
    s.b = v[1];
  } else if (name == "uniform") {
    expect_count(v, 0, 0, text);
    s.kind = DistKind::kUniform;
  } else if (name == "two-point") {
    expect_count(v, 2, 2, text);
    s.kind = DistKind::kTwoPoint;
    s.mu = v[0];
    s.eps = v[1];
  } else if (name == "point") {
    expect_count(v, 1, 1, text);
    s.kind = DistKind::kPointMass;
    s.mu = v[0];
  } else if (name == "switch") {
    expect_count(v, 0, 3, text);
    s.kind = DistKind::kSwitch;
    if (v.size() > 0) s.p1 = v[0];
    if (v.size() > 1) s.p2 = v[1];
    if (v.size() > 2) s.frac = v[2];
  } else if (name == "sinusoid") {
    expect_count(v, 0, 3, text);
    s.kind = DistKind::kSinusoid;
    if (v.size() > 0) s.center = v[0];
    if (v.size() > 1) s.amplitude = v[1];
    if (v.size() > 2) s.period = v[2];
  } else {
    throw ConfigError("unknown distribution '" + name + "'");
  }
  s.validate();
  return s;
}

std::string DistributionSpec::describe() const {
  switch (kind) {
    case DistKind::kBernoulli: return "bernoulli:" + fmt(p);
    case DistKind::kBeta: return "beta:" + fmt(a) + "," + fmt(b);
    case DistKind::kUniform: return "uniform";
    case DistKind::kTwoPoint: return "two-point:" + fmt(mu) + "," + fmt(eps);
    case DistKind::kPointMass: return "point:" + fmt(mu);
    case DistKind::kSwitch: return "switch:" + fmt(p1) + "," + fmt(p2) + "," + fmt(frac);
    case DistKind::kSinusoid: return "sinusoid:" + fmt(center) + "," + fmt(amplitude) + "," + fmt(period);
  }
  return "?";
}

void DistributionSpec::validate() const {
  auto prob = [](double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) throw ConfigError(std::string(what) + " must lie in [0, 1]");
  };
  switch (kind) {
    case DistKind::kBernoulli: prob(p, "p"); break;
    case DistKind::kBeta:
      if (!(a > 0.0 && b > 0.0)) throw ConfigError("beta parameters must be positive");
      break;
    case DistKind::kUniform: break;
    case DistKind::kTwoPoint:
      if (!(mu > 0.0 && mu < 1.0)) throw ConfigError("two-point mean must lie in (0, 1)");
      if (!(eps > 0.0 && eps < mu)) throw ConfigError("two-point eps must lie in (0, mu)");
      break;
    case DistKind::kPointMass: prob(mu, "point mass"); break;
    case DistKind::kSwitch:
      prob(p1, "p1");
      prob(p2, "p2");
      if (!(frac > 0.0 && frac < 1.0)) throw ConfigError("switch frac must lie in (0, 1)");
      break;
    case DistKind::kSinusoid:
      prob(center, "sinusoid center");
      if (!(amplitude >= 0.0)) throw ConfigError("sinusoid amplitude must be nonnegative");
      if (!(period >= 0.0)) throw ConfigError("sinusoid period must be nonnegative");
      break;
  }
}

bool DistributionSpec::stationary() const { return kind != DistKind::kSwitch && kind != DistKind::kSinusoid; }

double DistributionSpec::step_mean(std::int64_t t, std::int64_t horizon) const {
  switch (kind) {
    case DistKind::kSwitch: {
      const auto cut = static_cast<std::int64_t>(std::floor(frac * static_cast<double>(horizon) + 1e-9));
      return t <= cut ? p1 : p2;
    }
    case DistKind::kSinusoid: {
      const double per = period > 0.0 ? period : static_cast<double>(horizon) / 4.0;
      const double pt = center + amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / per);
      return std::clamp(pt, 0.1, 0.9);
    }
    default: return mean();
  }
}

double DistributionSpec::mean() const {
  switch (kind) {
    case DistKind::kBernoulli: return p;
    case DistKind::kBeta: return a / (a + b);
    case DistKind::kUniform: return 0.5;
    case DistKind::kTwoPoint:
    case DistKind::kPointMass: return mu;
    default: throw ConfigError("mean of a nonstationary scenario depends on t");
  }
}

double DistributionSpec::variance() const {
  switch (kind) {
    case DistKind::kBernoulli: return p * (1.0 - p);
    case DistKind::kBeta: return a * b / ((a + b) * (a + b) * (a + b + 1.0));
    case DistKind::kUniform: return 1.0 / 12.0;
    case DistKind::kTwoPoint: {
      const double low = (mu - eps) / (1.0 - eps);
      return eps * (1.0 - mu) * (1.0 - mu) + (1.0 - eps) * (low - mu) * (low - mu);
    }
    case DistKind::kPointMass: return 0.0;
    default: throw ConfigError("variance of a nonstationary scenario depends on t");
  }
}

double DistributionSpec::draw(CounterRng& rng, std::int64_t t, std::int64_t horizon) const {
  switch (kind) {
    case DistKind::kBernoulli: return rng.uniform() < p ? 1.0 : 0.0;
    case DistKind::kBeta: return beta_draw(rng, a, b);
    case DistKind::kUniform: return rng.uniform();
    case DistKind::kTwoPoint: return rng.uniform() < eps ? 1.0 : (mu - eps) / (1.0 - eps);
    case DistKind::kPointMass: return mu;
    case DistKind::kSwitch:
    case DistKind::kSinusoid: return rng.uniform() < step_mean(t, horizon) ? 1.0 : 0.0;
  }
  return 0.0;
}

MeanPath mean_path(const DistributionSpec& spec, std::int64_t horizon) {
  if (horizon < 1) throw ConfigError("horizon must be at least 1");
  MeanPath path;
  path.step.resize(static_cast<std::size_t>(horizon));
  path.average.resize(static_cast<std::size_t>(horizon));
  // Extended precision keeps mu_t within an ulp of the exact running average.
  long double sum = 0.0L;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const double m = spec.step_mean(t, horizon);
    sum += m;
    path.step[t - 1] = m;
    path.average[t - 1] = static_cast<double>(sum / static_cast<long double>(t));
  }
  return path;
}

ScalarPath sample_path(const DistributionSpec& spec, std::int64_t horizon, std::uint64_t seed,
                       std::uint64_t replication) {
  spec.validate();
  ScalarPath out{{}, mean_path(spec, horizon)};
  out.x.resize(static_cast<std::size_t>(horizon));
  CounterRng rng(seed, replication);
  for (std::int64_t t = 1; t <= horizon; ++t) out.x[t - 1] = spec.draw(rng, t, horizon);
  return out;
}

// ---- matrix generators -------------------------------------------------------

MatrixGenSpec MatrixGenSpec::parse(const std::string& text, std::size_t d) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const auto v = parse_list(colon == std::string::npos ? "" : text.substr(colon + 1), text);
  MatrixGenSpec s;
  s.d = d;
  if (name == "diagonal-bernoulli") {
    s.kind = MatrixGenKind::kDiagonalBernoulli;
    if (!v.empty()) s.p = v;
  } else if (name == "rotated-beta") {
    s.kind = MatrixGenKind::kRotatedBeta;
    if (!v.empty()) {
      if (v.size() % 2 != 0) throw ConfigError("rotated-beta needs (a, b) pairs");
      s.ab.clear();
      for (std::size_t k = 0; k < v.size(); k += 2) s.ab.emplace_back(v[k], v[k + 1]);
    }
  } else {
    throw ConfigError("unknown matrix generator '" + name + "'");
  }
  s.validate();
  return s;
}

std::string MatrixGenSpec::describe() const {
  std::string out = kind == MatrixGenKind::kDiagonalBernoulli ? "diagonal-bernoulli:" : "rotated-beta:";
  bool first = true;
  auto add = [&](double x) {
    if (!first) out += ",";
    out += fmt(x);
    first = false;
  };
  if (kind == MatrixGenKind::kDiagonalBernoulli) {
    for (double x : p) add(x);
  } else {
    for (const auto& [a, b] : ab) {
      add(a);
      add(b);
    }
  }
  return out;
}

void MatrixGenSpec::validate() const {
  if (d < 1) throw ConfigError("matrix dimension must be at least 1");
  if (kind == MatrixGenKind::kDiagonalBernoulli) {
    if (p.empty()) throw ConfigError("diagonal-bernoulli needs at least one p");
    for (double x : p) {
      if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("p must lie in [0, 1]");
    }
  } else {
    if (ab.empty()) throw ConfigError("rotated-beta needs at least one (a, b) pair");
    for (const auto& [a, b] : ab) {
      if (!(a > 0.0 && b > 0.0)) throw ConfigError("beta parameters must be positive");
    }
  }
}

SymMatrix random_orthogonal(std::size_t d, std::uint64_t seed) {
  CounterRng rng(seed, 0xb4515ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  SymMatrix q(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) q(i, j) = normal(rng);
  }
  // Modified Gram-Schmidt on columns.
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      double dot = 0.0;
      for (std::size_t i = 0; i < d; ++i) dot += q(i, j) * q(i, k);
      for (std::size_t i = 0; i < d; ++i) q(i, j) -= dot * q(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) norm += q(i, j) * q(i, j);
    norm = std::sqrt(norm);
    if (!(norm > 1e-12)) throw NumericalError("degenerate random basis");
    for (std::size_t i = 0; i < d; ++i) q(i, j) /= norm;
  }
  return q;
}

MatrixGenerator::MatrixGenerator(MatrixGenSpec spec, std::uint64_t seed, std::uint64_t replication)
    : spec_(std::move(spec)), rng_(seed, replication) {
  spec_.validate();
  const std::size_t d = spec_.d;
  std::vector<double> diag(d);
  if (spec_.kind == MatrixGenKind::kDiagonalBernoulli) {
    basis_ = SymMatrix::identity(d);
    for (std::size_t k = 0; k < d; ++k) diag[k] = spec_.p[k % spec_.p.size()];
    mean_ = SymMatrix::diagonal(diag);
  } else {
    basis_ = random_orthogonal(d, spec_.basis_seed);
    for (std::size_t k = 0; k < d; ++k) {
      const auto [a, b] = spec_.ab[k % spec_.ab.size()];
      diag[k] = a / (a + b);
    }
    mean_ = spectral_map(EigDecomposition{diag, basis_}, [](double x) { return x; });
  }
}

SymMatrix MatrixGenerator::next() {
  const std::size_t d = spec_.d;
  std::vector<double> diag(d);
  if (spec_.kind == MatrixGenKind::kDiagonalBernoulli) {
    for (std::size_t k = 0; k < d; ++k) diag[k] = rng_.uniform() < spec_.p[k % spec_.p.size()] ? 1.0 : 0.0;
    return SymMatrix::diagonal(diag);
  }
  for (std::size_t k = 0; k < d; ++k) {
    const auto [a, b] = spec_.ab[k % spec_.ab.size()];
    diag[k] = beta_draw(rng_, a, b);
  }
  return spectral_map(EigDecomposition{diag, basis_}, [](double x) { return x; });
}

// ---- CSV ------------------------------------------------------------------------

std::vector<double> parse_scalar_csv(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty()) continue;
    double v = 0.0;
    if (!parse_double(body, v)) throw DataError("cannot parse '" + std::string(body) + "' as a number", lineno);
    if (!(v >= 0.0 && v <= 1.0)) throw DataError("value " + std::string(body) + " outside [0, 1]", lineno);
    out.push_back(v);
  }
  return out;
}

std::vector<double> ingest_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string(), 0);
  return parse_scalar_csv(in);
}

std::vector<SymMatrix> parse_matrix_csv(std::istream& in) {
  std::vector<SymMatrix> out;
  std::string line;
  std::size_t lineno = 0;
  std::size_t d = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim(line);
    if (body.empty()) continue;
    if (d == 0) {
      if (body.front() == '#') body = trim(body.substr(1));
      double dv = 0.0;
      if (body.substr(0, 2) != "d=" || !parse_double(body.substr(2), dv) || dv < 1.0 || dv != std::floor(dv)) {
        throw DataError("expected header 'd=<dimension>'", lineno);
      }
      d = static_cast<std::size_t>(dv);
      continue;
    }
    std::vector<double> values;
    try {
      values = parse_list(body, "matrix row");
    } catch (const ConfigError& e) {
      throw DataError(e.what(), lineno);
    }
    if (values.size() != d * d) {
      throw DataError("expected " + std::to_string(d * d) + " values, got " + std::to_string(values.size()), lineno);
    }
    SymMatrix m(d, std::move(values));
    try {
      check_spectrum(m, 0.0, 1.0);
    } catch (const DomainError& e) {
      throw DataError(e.what(), lineno);
    }
    out.push_back(std::move(m));
  }
  if (d == 0) throw DataError("missing 'd=<dimension>' header", lineno);
  return out;
}

std::vector<SymMatrix> ingest_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string(), 0);
  return parse_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const std::vector<SymMatrix>& stream) {
  if (stream.empty()) throw DomainError("empty matrix stream");
  out << "d=" << stream.front().dim() << '\n';
  out << std::setprecision(17);
  for (const auto& m : stream) {
    const auto& data = m.data();
    for (std::size_t k = 0; k < data.size(); ++k) out << (k ? "," : "") << data[k];
    out << '\n';
  }
}

}  // namespace ebcs
