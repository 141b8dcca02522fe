#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ebcs/errors.hpp"
#include "ebcs/harness.hpp"
#include "ebcs/kernel.hpp"

using namespace ebcs;

namespace {

using Row = std::vector<std::string>;

std::vector<Row> parse_rows(const std::string& text) {
  std::vector<Row> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    Row r;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) r.push_back(cell);
    if (!line.empty() && line.back() == ',') r.emplace_back();
    rows.push_back(r);
  }
  return rows;
}

std::string header_of(const std::string& text) { return text.substr(0, text.find('\n')); }

}  // namespace

TEST(LogGrid, Properties) {
  const auto g = log_grid(1000000, 64);
  EXPECT_EQ(g.front(), 1);
  EXPECT_EQ(g.back(), 1000000);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
  EXPECT_LE(g.size(), 6u * 64u + 1u);
  const auto small = log_grid(7, 32);
  EXPECT_EQ(small.back(), 7);
  EXPECT_EQ(log_grid(1, 4), std::vector<std::int64_t>{1});
  EXPECT_THROW(log_grid(100, 65), ConfigError);
  EXPECT_THROW(log_grid(0, 8), ConfigError);
}

TEST(ParallelFor, CoversEveryIndexOnceAndPropagatesErrors) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 4,
                            [](std::size_t i) {
                              if (i == 7) throw NumericalError("boom");
                            }),
               NumericalError);
}

TEST(Track, RowCountAndApxContract) {
  MethodParams p;
  std::ostringstream out;
  run_track(out, scenario_source(DistributionSpec::parse("bernoulli:0.5"), 1000, 1), parse_methods("apx,wsr"), p);
  const std::string text = out.str();
  EXPECT_EQ(header_of(text), "t,method,center,lo,hi,halfwidth,valid,mu_t,covered");
  const auto rows = parse_rows(text);
  ASSERT_EQ(rows.size(), 2000u);
  bool any_valid = false;
  for (const auto& r : rows) {
    ASSERT_EQ(r.size(), 9u);
    if (r[1] != "apx") continue;
    if (r[6] == "0") {
      EXPECT_FALSE(any_valid) << "apx became invalid again at t=" << r[0];
      EXPECT_EQ(std::stod(r[3]), 0.0);
      EXPECT_EQ(std::stod(r[4]), 1.0);
    } else {
      any_valid = true;
    }
  }
  EXPECT_TRUE(any_valid);
  EXPECT_EQ(text.find("wall_seconds"), std::string::npos);
}

TEST(Track, SubGaussianNeedsSigma) {
  MethodParams p;
  std::ostringstream out;
  const auto src = scenario_source(DistributionSpec::parse("bernoulli:0.5"), 10, 1);
  EXPECT_THROW(run_track(out, src, parse_methods("hoeff"), p), ConfigError);
  p.sigma = 0.5;
  EXPECT_NO_THROW(run_track(out, src, parse_methods("hoeff,robbins"), p));
}

TEST(Track, MethodListErrors) {
  EXPECT_THROW(parse_methods("apx,apx"), ConfigError);
  EXPECT_THROW(parse_methods("foo"), ConfigError);
  EXPECT_THROW(parse_matrix_methods("nope"), ConfigError);
  EXPECT_EQ(parse_methods("apx,mix,unif,stch,wsr,hrms,hoeff,robbins").size(), 8u);
}

TEST(MatrixTrack, OneDimensionMatchesScalarTrack) {
  const std::int64_t horizon = 400;
  std::ostringstream scalar_out;
  MethodParams p;
  run_track(scalar_out, scenario_source(DistributionSpec::parse("bernoulli:0.5"), horizon, 3), {Method::kApx}, p);
  std::ostringstream matrix_out;
  run_matrix_track(matrix_out, generator_source(MatrixGenSpec::parse("diagonal-bernoulli:0.5", 1), horizon, 3),
                   {MatrixMethod::kMatApx}, p.alpha, p.kappa);
  const auto s = parse_rows(scalar_out.str());
  const auto m = parse_rows(matrix_out.str());
  ASSERT_EQ(s.size(), m.size());
  int compared = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    ASSERT_EQ(s[i][0], m[i][0]);
    ASSERT_EQ(s[i][6], m[i][4]) << "valid flag at t=" << s[i][0];
    if (s[i][6] == "1") {
      EXPECT_NEAR(std::stod(s[i][5]), std::stod(m[i][3]), 1e-10);
      ++compared;
    }
  }
  EXPECT_GT(compared, 100);
}

TEST(Compare, ThreadCountInvariance) {
  MethodParams p;
  CompareOptions o;
  o.horizon = 3000;
  o.reps = 6;
  o.per_decade = 16;
  const auto spec = DistributionSpec::parse("beta:5,2");
  const auto methods = parse_methods("apx,stch,wsr,hrms");
  std::ostringstream one;
  std::ostringstream four;
  o.threads = 1;
  write_compare_csv(one, compare(spec, methods, p, o));
  o.threads = 4;
  write_compare_csv(four, compare(spec, methods, p, o));
  EXPECT_EQ(one.str(), four.str());
  EXPECT_EQ(header_of(one.str()),
            "t,log10_t,method,median_halfwidth,log10_median_halfwidth,valid_fraction,median_u_t,median_u_over_t");
}

TEST(Compare, UtGrowsSublinearly) {
  MethodParams p;
  CompareOptions o;
  o.horizon = 20000;
  o.reps = 5;
  o.per_decade = 8;
  const auto r = compare(DistributionSpec::parse("bernoulli:0.5"), {Method::kApx}, p, o);
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    const double t = static_cast<double>(r.grid[i]);
    if (t < 100) continue;
    EXPECT_LT(r.median_u_t[i] / t, 1.0) << t;
  }
}

TEST(Coverage, ThreadInvarianceAndSingleReplication) {
  MethodParams p;
  CoverageOptions o;
  o.horizon = 500;
  o.reps = 24;
  const auto spec = DistributionSpec::parse("bernoulli:0.5");
  const auto methods = parse_methods("apx,mix,stch,hrms,wsr");
  std::ostringstream a;
  std::ostringstream b;
  o.threads = 1;
  write_coverage_csv(a, run_coverage(spec, methods, p, o));
  o.threads = 3;
  write_coverage_csv(b, run_coverage(spec, methods, p, o));
  EXPECT_EQ(a.str(), b.str());

  o.reps = 1;
  const auto single = run_coverage(spec, methods, p, o);
  for (const auto& m : single.methods) EXPECT_TRUE(m.rate == 0.0 || m.rate == 1.0) << m.method;
}

TEST(Coverage, WsrBreaksUnderDrift) {
  MethodParams p;
  CoverageOptions o;
  o.horizon = 5000;
  o.reps = 40;
  o.threads = 4;
  const auto r = run_coverage(DistributionSpec::parse("switch"), parse_methods("wsr,apx"), p, o);
  EXPECT_GE(r.methods[0].rate, 0.9);
  EXPECT_LE(r.methods[1].rate, 0.1);
}

TEST(Coverage, IntersectionRefusedUnderDrift) {
  MethodParams p;
  p.intersect = true;
  CoverageOptions o;
  o.reps = 2;
  o.horizon = 100;
  EXPECT_THROW(run_coverage(DistributionSpec::parse("switch"), {Method::kApx}, p, o), ConfigError);
}

TEST(KappaSweep, ConvergesAndReportsKappaZ) {
  KappaSweepOptions o;
  o.kappas = {10.0, 100.0};
  o.horizon = 10000;
  o.per_decade = 4;
  const auto r = kappa_sweep(DistributionSpec::parse("bernoulli:0.5"), 0.05, o);
  ASSERT_EQ(r.curves.size(), 2u);
  EXPECT_NEAR(r.curves[1].kappa_z, std::sqrt(2.0 / std::numbers::pi), 1e-3);
  const double w10 = r.curves[0].median_halfwidth.back();
  const double w100 = r.curves[1].median_halfwidth.back();
  EXPECT_LE(std::abs(w10 - w100) / w100, 0.02);

  o.kappas = {0.25};
  std::ostringstream out;
  write_kappa_sweep_csv(out, kappa_sweep(DistributionSpec::parse("bernoulli:0.5"), 0.05, o));
  for (const auto& row : parse_rows(out.str())) EXPECT_EQ(row[0], "0.25");
}

TEST(MatrixCoverage, ThreadInvariance) {
  CoverageOptions o;
  o.horizon = 300;
  o.reps = 8;
  const auto spec = MatrixGenSpec::parse("diagonal-bernoulli", 2);
  const auto methods = parse_matrix_methods("mat_apx,wang_ramdas");
  std::ostringstream a;
  std::ostringstream b;
  o.threads = 1;
  write_coverage_csv(a, run_matrix_coverage(spec, methods, 0.05, 0.25, o));
  o.threads = 4;
  write_coverage_csv(b, run_matrix_coverage(spec, methods, 0.05, 0.25, o));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Asymptotics, CsvBlocks) {
  std::ostringstream out;
  write_asymptotics_csv(out, {1e4, 1e6}, 0.5, 0.05, std::log(2.0) - 0.5);
  const std::string text = out.str();
  EXPECT_EQ(header_of(text), "distribution,mean,sigma2_half,expected_psi_e,c_mu_sigma2");
  const auto split = text.find("\n\n");
  ASSERT_NE(split, std::string::npos);
  const std::string second = text.substr(split + 2);
  EXPECT_EQ(header_of(second), "method,t,limiting_width");
  EXPECT_EQ(parse_rows(second).size(), 20u);
  EXPECT_EQ(residual_table_laws().size(), 5u);
}
