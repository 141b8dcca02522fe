#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ebcs/eb.hpp"
#include "ebcs/errors.hpp"
#include "ebcs/streams.hpp"
#include "oracles.hpp"

using namespace ebcs;

namespace {

EbState state_with(double u, std::int64_t t, double s_t, const EbConfig& c) {
  EbState st = new_state(c);
  st.u_t = u;
  st.t = t;
  st.s_t = s_t;
  st.t0_reached = t0_reached(st, c);
  return st;
}

std::vector<double> bernoulli_stream(std::int64_t n, std::uint64_t seed, double p = 0.5) {
  return sample_path(DistributionSpec::parse("bernoulli:" + std::to_string(p)), n, seed).x;
}

}  // namespace

TEST(EbConfig, Validation) {
  EbConfig c;
  EXPECT_NO_THROW(c.validate());
  c.alpha = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c.alpha = 1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.kappa = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.predictor = PredictorKind::kConstant;
  c.constant_prediction = 1.0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(EbState, Initialisation) {
  EbConfig c;
  EXPECT_DOUBLE_EQ(new_state(c).u_t, 8.0);
  c.kappa = 1.0;
  EXPECT_DOUBLE_EQ(new_state(c).u_t, 0.5);
  c.predictor = PredictorKind::kConstant;
  c.constant_prediction = 0.3;
  const EbState s = new_state(c);
  EXPECT_DOUBLE_EQ(s.next_predictor, 0.3);
  EXPECT_EQ(s.t, 0);
  EXPECT_EQ(s.s_t, 0.0);
}

TEST(EbState, UpdateAccumulates) {
  const EbConfig c;
  const EbState s1 = update(new_state(c), c, 1.0);
  EXPECT_NEAR(s1.u_t, 8.19314718055994531, 1e-14);
  EXPECT_EQ(s1.t, 1);
  EXPECT_DOUBLE_EQ(s1.s_t, 1.0);
  EXPECT_DOUBLE_EQ(s1.next_predictor, 0.75);
  const EbState s2 = update(new_state(c), c, 0.5);
  EXPECT_EQ(s2.u_t, 8.0);
  EXPECT_THROW(update(new_state(c), c, 1.5), DomainError);
  EXPECT_THROW(update(new_state(c), c, -0.1), DomainError);
}

TEST(EbState, InvariantsAlongStream) {
  const EbConfig c;
  EbState s = new_state(c);
  double prev_u = s.u_t;
  bool was = false;
  for (double x : bernoulli_stream(3000, 7, 0.3)) {
    update_in_place(s, c, x);
    EXPECT_GE(s.u_t, prev_u);
    EXPECT_GE(s.u_t, 8.0);
    EXPECT_GE(s.s_t, 0.0);
    EXPECT_LE(s.s_t, static_cast<double>(s.t));
    EXPECT_GE(s.next_predictor, 0.0);
    EXPECT_LT(s.next_predictor, 1.0);
    if (was) EXPECT_TRUE(s.t0_reached);
    was = s.t0_reached;
    prev_u = s.u_t;
  }
}

TEST(EbState, ExternalPredictor) {
  EbConfig c;
  c.predictor = PredictorKind::kExternal;
  EbState s = new_state(c);
  update_in_place(s, c, 1.0, 0.9);
  EXPECT_DOUBLE_EQ(s.next_predictor, 0.9);
  update_in_place(s, c, 1.0, 0.2);
  EXPECT_NEAR(s.u_t, 8.0 + psi_e(0.5) + psi_e(0.1), 1e-14);
  EXPECT_THROW(update_in_place(s, c, 1.0, 1.0), DomainError);
}

TEST(HittingTime, ThresholdExamples) {
  const EbConfig c;
  EXPECT_NEAR(std::exp(c.log_threshold()), 12.532347492852287, 1e-12);
  EXPECT_FALSE(hitting_condition(8.0, c.log_threshold()));
  EXPECT_TRUE(hitting_condition(14.0, c.log_threshold()));
  EXPECT_TRUE(hitting_condition(1e6, c.log_threshold()));
  // sqrt(pi/U)(exp(U/4) - 1/2) at U = 14 is 15.4502 > G but below G(alpha = 0.005).
  EbConfig strict = c;
  strict.alpha = 0.005;
  EXPECT_FALSE(hitting_condition(14.0, strict.log_threshold()));
}

TEST(HittingTime, MonotoneInU) {
  const EbConfig c;
  bool seen = false;
  for (int i = 0; i <= 4000; ++i) {
    const double u = 0.01 * i + 0.01;
    const bool h = hitting_condition(u, c.log_threshold());
    if (seen) EXPECT_TRUE(h) << u;
    seen = seen || h;
  }
  EXPECT_TRUE(seen);
}

TEST(ClosedForm, WorkedExample) {
  const EbConfig c;
  const EbState s = state_with(100.0, 1000, 500.0, c);
  const Interval iv = interval_apx(s, c);
  EXPECT_TRUE(iv.valid);
  EXPECT_NEAR(iv.halfwidth, 0.041272427848296594, 1e-14);
  EXPECT_DOUBLE_EQ(iv.center, 0.5);
  EbConfig strict = c;
  strict.alpha = 0.005;
  EXPECT_GT(interval_apx(state_with(100.0, 1000, 500.0, strict), strict).halfwidth, iv.halfwidth);
}

TEST(ClosedForm, InvalidBeforeHittingTime) {
  const EbConfig c;
  EbState s = new_state(c);
  update_in_place(s, c, 1.0);
  const Interval iv = interval_apx(s, c);
  EXPECT_FALSE(iv.valid);
  EXPECT_EQ(iv.lo, 0.0);
  EXPECT_EQ(iv.hi, 1.0);
  EXPECT_THROW(interval_apx(new_state(c), c), DomainError);
}

TEST(ClosedForm, LargeUTreatsCorrectionAsOne) {
  const double w = closed_form_halfwidth(400.0, 10000, std::log(5.0));
  EXPECT_DOUBLE_EQ(w, 2.0 / 10000.0 * std::sqrt(400.0 * (std::log(5.0) + 0.5 * std::log(800.0))));
}

TEST(Mixture, WorkedExampleAndSuperset) {
  const EbConfig c;
  const EbState s = state_with(100.0, 1000, 500.0, c);
  const Interval mix = interval_mix(s, c);
  EXPECT_NEAR(mix.halfwidth, 0.041272427848229295, 1e-12);
  EXPECT_GE(mix.halfwidth, 0.95 * interval_apx(s, c).halfwidth);
  EXPECT_LE(mix.halfwidth, interval_apx(s, c).halfwidth + 1e-9);
}

TEST(Mixture, ContainsAgreesWithInterval) {
  const EbConfig c;
  EbState s = new_state(c);
  const auto xs = bernoulli_stream(2000, 11);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    update_in_place(s, c, xs[i]);
    if (i % 97 != 0) continue;
    const Interval iv = interval_mix(s, c);
    const double mean = s.s_t / static_cast<double>(s.t);
    EXPECT_TRUE(mix_contains(s, c, mean));
    EXPECT_TRUE(iv.lo <= mean && mean <= iv.hi);
    const double r = iv.halfwidth;
    EXPECT_TRUE(mix_contains(s, c, mean + 0.999 * r));
    EXPECT_FALSE(mix_contains(s, c, mean + 1.001 * r));
    EXPECT_FALSE(mix_contains(s, c, mean - 1.001 * r));
  }
}

TEST(Uniform, GridScanOracle) {
  EbConfig c;
  // V_t = 100 means U_t = 100 + 1/(2 kappa^2).
  const EbState s = state_with(100.0 + 8.0, 1000, 500.0, c);
  const double expected = oracle::grid_scan_radius(100.0, std::log(2.0 / 0.05), 200.0) / 1000.0;
  EXPECT_NEAR(expected, 0.046557919215460142, 1e-9);
  EXPECT_NEAR(interval_unif(s, c).halfwidth, expected, 1e-6);
}

TEST(Uniform, VacuousWithoutResiduals) {
  // I(0; v) tends to 2 < 2/alpha as v -> 0, so only V_t = 0 is vacuous.
  const EbConfig c;
  EbState s = new_state(c);
  update_in_place(s, c, 0.5);
  const Interval iv = interval_unif(s, c);
  EXPECT_FALSE(iv.valid);
  EXPECT_EQ(iv.lo, 0.0);
  EXPECT_EQ(iv.hi, 1.0);
}

TEST(Uniform, LimitOfLargeKappa) {
  EbConfig wide;
  wide.kappa = 1e3;
  const auto xs = bernoulli_stream(5000, 3);
  EbState s = new_state(wide);
  for (double x : xs) update_in_place(s, wide, x);
  const double mix = interval_mix(s, wide).halfwidth;
  const double unif = interval_unif(s, wide).halfwidth;
  EXPECT_LE(std::abs(mix - unif) / unif, 1e-3);
}

TEST(Supermartingale, BernoulliEnumeration) {
  for (double p : {0.1, 0.5, 0.9}) {
    for (double xi : {-1.0, -0.5, 0.3, 1.0}) {
      for (double xhat : {0.2, 0.5}) {
        const double inc = p * std::exp(xi * (1.0 - p) - xi * xi * psi_e(std::abs(1.0 - xhat))) +
                           (1.0 - p) * std::exp(xi * (0.0 - p) - xi * xi * psi_e(xhat));
        EXPECT_LE(inc, 1.0 + 1e-12) << p << " " << xi << " " << xhat;
      }
    }
  }
}

TEST(Intersection, NestedIntervals) {
  EbConfig c;
  c.intersect = true;
  EbState s = new_state(c);
  double lo = -1.0;
  double hi = 2.0;
  for (double x : bernoulli_stream(5000, 5)) {
    update_in_place(s, c, x);
    const Interval iv = interval_apx(s, c);
    if (!iv.valid) continue;
    EXPECT_GE(iv.lo, lo);
    EXPECT_LE(iv.hi, hi);
    lo = iv.lo;
    hi = iv.hi;
  }
  EXPECT_GT(lo, 0.0);
}

TEST(WidthOrdering, NonincreasingInAlpha) {
  const auto xs = bernoulli_stream(3000, 9);
  std::vector<double> apx, mix, unif;
  for (double alpha : {0.001, 0.01, 0.05, 0.1, 0.3}) {
    EbConfig c;
    c.alpha = alpha;
    EbState s = new_state(c);
    for (double x : xs) update_in_place(s, c, x);
    apx.push_back(interval_apx(s, c).halfwidth);
    mix.push_back(interval_mix(s, c).halfwidth);
    unif.push_back(interval_unif(s, c).halfwidth);
  }
  for (std::size_t i = 1; i < apx.size(); ++i) {
    EXPECT_LE(apx[i], apx[i - 1]);
    EXPECT_LE(mix[i], mix[i - 1]);
    EXPECT_LE(unif[i], unif[i - 1]);
  }
}

TEST(Superset, ClosedFormContainsMixtureOnStreams) {
  const EbConfig c;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EbState s = new_state(c);
    for (double x : bernoulli_stream(5000, seed)) {
      update_in_place(s, c, x);
      const Interval mix = interval_mix(s, c);
      const double mean = s.s_t / static_cast<double>(s.t);
      ASSERT_TRUE(mix.lo <= mean && mean <= mix.hi);
      if (!s.t0_reached) continue;
      ASSERT_GE(interval_apx(s, c).halfwidth, mix.halfwidth - 1e-9) << "t=" << s.t;
    }
  }
}
