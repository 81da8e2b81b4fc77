#include "oracles.hpp"
#include "stochwave/waveform.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace stochwave;

namespace {

WaveformParams params(double epsilon, std::uint64_t seed, Distribution dist = Distribution::gaussian(1.0)) {
  WaveformParams p;
  p.epsilon = epsilon;
  p.seed = seed;
  p.dist = dist;
  return p;
}

}  // namespace

TEST(DiscreteWaveform, SingleTerm) {
  DrawLog log;
  const auto w = generate_discrete(params(2.0, 1), 0, &log);
  ASSERT_EQ(w.n_max(), 0);
  ASSERT_EQ(log.draws.size(), 1u);
  EXPECT_EQ(w.phase(0), (two_pi / 2.0) * log.draws[0]);
  EXPECT_NEAR(std::abs(w[0]), 1.0, 1e-15);
}

TEST(DiscreteWaveform, PhasesMatchResummedDrawLog) {
  for (auto dist : {Distribution::gaussian(0.7), Distribution::bilateral(), Distribution::cauchy()}) {
    DrawLog log;
    const auto w = generate_discrete(params(3.0, 17, dist), 40, &log);
    const auto expected = oracle::phases_from_draws(log.draws, 3.0, 40);
    for (Index n = 0; n <= 40; ++n) EXPECT_NEAR(w.phase(n), expected[n], 1e-12 * (1 + std::abs(expected[n])));
  }
}

TEST(DiscreteWaveform, ConsecutivePhaseDifference) {
  DrawLog log;
  const auto w = generate_discrete(params(1.5, 23), 3, &log);
  EXPECT_NEAR(w.phase(2) - w.phase(1), (two_pi / 1.5) * (log.y(-2) + log.y(2)), 1e-12);
}

TEST(DiscreteWaveform, HalvingEpsilonDoublesPhases) {
  const auto a = generate_discrete(params(2.0, 99), 200);
  const auto b = generate_discrete(params(1.0, 99), 200);
  for (Index n = 0; n <= 200; ++n) EXPECT_EQ(b.phase(n), 2.0 * a.phase(n));
}

TEST(DiscreteWaveform, SymmetricExtensionAndUnimodularity) {
  const auto w = generate_discrete(params(0.5, 4), 300);
  for (Index n = -300; n <= 300; ++n) {
    EXPECT_EQ(w.phase(n), w.phase(-n));
    EXPECT_NEAR(std::abs(w[n]), 1.0, 1e-12);
  }
  EXPECT_THROW(w.phase(301), std::out_of_range);
  EXPECT_THROW(generate_discrete(params(0.5, 4), -1), std::invalid_argument);
  EXPECT_THROW(generate_discrete(params(0.0, 4), 3), std::invalid_argument);
}

TEST(DiscreteWaveform, LongWaveformsStayUnimodular) {
  const auto w = generate_discrete(params(1e-4, 8), 200000);
  const VectorXc x = w.materialize();
  EXPECT_LE((x.cwiseAbs().array() - 1.0).abs().maxCoeff(), 1e-12);
}

TEST(DiscreteWaveform, StreamsAreIndependentOfEachOther) {
  const auto p = params(1.0, 5);
  const auto a = generate_discrete(p.with_stream(0), 10);
  const auto b = generate_discrete(p.with_stream(1), 10);
  const auto a2 = generate_discrete(p.with_stream(0), 10);
  EXPECT_NE(a.phases(), b.phases());
  EXPECT_EQ(a.phases(), a2.phases());
}

TEST(PeriodicWaveform, PrefixOfDiscrete) {
  const auto p = params(1.25, 31);
  const auto per = generate_periodic(p, 17);
  const auto dis = generate_discrete(p, 16);
  ASSERT_EQ(per.period(), 17);
  for (Index m = 0; m < 17; ++m) {
    EXPECT_EQ(per.phase(m), dis.phase(m));
    EXPECT_EQ(per.phase(m + 17), per.phase(m));
    EXPECT_EQ(per.phase(m - 17), per.phase(m));
    EXPECT_NEAR(std::abs(per[m]), 1.0, 1e-12);
  }
  EXPECT_EQ(generate_periodic(p, 1).period(), 1);
  EXPECT_THROW(generate_periodic(p, 0), std::invalid_argument);
}

TEST(VectorWaveform, UnitNormWindows) {
  const auto v = generate_vector(params(0.8, 12), 5, 50);
  for (Index m = -50; m <= v.m_max(); ++m) {
    const VectorXc x = v[m];
    EXPECT_NEAR(x.squaredNorm(), 1.0, 1e-12);
    const Complex self = x.dot(x);
    EXPECT_EQ(self.imag(), 0.0);
    EXPECT_GT(self.real(), 0.0);
  }
}

TEST(VectorWaveform, WindowCopiesBaseEntries) {
  const auto v = generate_vector(params(0.8, 13), 2, 10);
  const VectorXc x = v[0];
  EXPECT_NEAR(std::abs(x(0) - v.base()[0] / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x(1) - v.base()[1] / std::sqrt(2.0)), 0.0, 1e-15);
  const VectorXc y = v[-3];
  EXPECT_NEAR(std::abs(y(0) - v.base()[3] / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(y(1) - v.base()[2] / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_EQ(v.m_max(), 10);
  EXPECT_THROW(generate_vector(params(0.8, 13), 1, 10), std::invalid_argument);
}

TEST(ContinuousWaveform, StartsAtOne) {
  const auto w = generate_continuous(params(two_pi, 3), 1.0, 0.01);
  EXPECT_EQ(w.phase(0), 0.0);
  EXPECT_EQ(w[0], Complex(1.0, 0.0));
  EXPECT_EQ(w.steps(), 100);
  EXPECT_NEAR(w.horizon(), 1.0, 1e-12);
  EXPECT_EQ(w.phase(-7), w.phase(7));
}

TEST(ContinuousWaveform, IncrementVariance) {
  const double eps = 3.0, dt = 0.01;
  std::vector<double> increments;
  const auto w = generate_continuous(params(eps, 77, Distribution::gaussian(1.3)), 1000.0, dt, &increments);
  ASSERT_EQ(increments.size(), 100000u);
  double mean = 0.0;
  std::vector<double> dtheta;
  for (Index j = 0; j < w.steps(); ++j) dtheta.push_back(w.phase(j + 1) - w.phase(j));
  for (double v : dtheta) mean += v;
  mean /= double(dtheta.size());
  double var = 0.0;
  for (double v : dtheta) var += (v - mean) * (v - mean);
  var /= double(dtheta.size() - 1);
  const double scale = two_pi / eps;
  EXPECT_NEAR(var / (scale * scale * 1.3 * 1.3 * dt), 1.0, 0.05);
}

TEST(ContinuousWaveform, PhasesArePartialSumsOfIncrements) {
  std::vector<double> inc;
  const auto w = generate_continuous(params(2.0, 5), 0.5, 0.05, &inc);
  double running = 0.0;
  for (Index j = 1; j <= w.steps(); ++j) {
    running += inc[j - 1];
    EXPECT_NEAR(w.phase(j), (two_pi / 2.0) * running, 1e-12);
  }
}

TEST(ContinuousWaveform, IncrementsAreUncorrelated) {
  std::vector<double> inc;
  generate_continuous(params(1.0, 41), 500.0, 0.01, &inc);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j + 1 < inc.size(); ++j) num += inc[j] * inc[j + 1];
  for (double v : inc) den += v * v;
  EXPECT_NEAR(num / den, 0.0, 4.0 / std::sqrt(double(inc.size())));
}

TEST(ContinuousWaveform, RefinementKeepsSharedGridPoints) {
  const auto coarse = generate_continuous(params(1.0, 8), 2.0, 0.02);
  const auto fine = refine(coarse, 1234);
  ASSERT_EQ(fine.steps(), 2 * coarse.steps());
  EXPECT_DOUBLE_EQ(fine.dt(), 0.01);
  for (Index j = 0; j <= coarse.steps(); ++j) EXPECT_EQ(fine.phase(2 * j), coarse.phase(j));
}

// Midpoints of a Brownian bridge deviate from the chord average with
// variance sigma^2 dt / 4 per coordinate of W.
TEST(ContinuousWaveform, RefinementMidpointVariance) {
  const double dt = 0.02;
  const auto coarse = generate_continuous(params(two_pi, 8), 400.0, dt);
  const auto fine = refine(coarse, 99);
  double sq = 0.0;
  for (Index j = 0; j < coarse.steps(); ++j) {
    const double dev = fine.phase(2 * j + 1) - 0.5 * (coarse.phase(j) + coarse.phase(j + 1));
    sq += dev * dev;
  }
  EXPECT_NEAR(sq / double(coarse.steps()) / (dt / 4.0), 1.0, 0.05);
}

TEST(ContinuousWaveform, Preconditions) {
  EXPECT_THROW(generate_continuous(params(1.0, 1, Distribution::cauchy()), 1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(generate_continuous(params(1.0, 1), 1.0, 0.3), std::invalid_argument);
  EXPECT_THROW(generate_continuous(params(1.0, 1), -1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(generate_continuous(params(1.0, 1), 1.0, 0.0), std::invalid_argument);
}
