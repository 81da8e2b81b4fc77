#include "stochwave/distributions.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

using namespace stochwave;

namespace {

constexpr int draws = 100000;

std::vector<double> sample(const Distribution& dist, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<double> out(draws);
  for (double& y : out) y = dist.sample(rng);
  return out;
}

}  // namespace

TEST(RandomStream, SameSeedSameStream) {
  RandomStream a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.standard_normal(), b.standard_normal());
}

TEST(RandomStream, UniformRanges) {
  RandomStream rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    const double v = rng.uniform_open();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
}

TEST(RandomStream, BelowIsBoundedAndHitsEveryValue) {
  RandomStream rng(9);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_THROW(rng.below(0), std::invalid_argument);
}

TEST(RandomStream, StreamSeedsDiffer) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t t = 0; t < 1000; ++t) seeds.insert(stream_seed(5, t));
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_NE(stream_seed(5, 0), stream_seed(6, 0));
}

TEST(Distribution, GaussianMeanAndVariance) {
  const auto y = sample(Distribution::gaussian(1.0), 3);
  double mean = 0.0, sq = 0.0;
  for (double v : y) mean += v;
  mean /= draws;
  for (double v : y) sq += (v - mean) * (v - mean);
  EXPECT_NEAR(mean, 0.0, 4.0 / std::sqrt(double(draws)));
  EXPECT_NEAR(sq / (draws - 1), 1.0, 0.02);
}

TEST(Distribution, GaussianSigmaScales) {
  const auto y = sample(Distribution::gaussian(2.5), 4);
  double sq = 0.0;
  for (double v : y) sq += v * v;
  EXPECT_NEAR(std::sqrt(sq / draws), 2.5, 0.03);
}

TEST(Distribution, BilateralTailMass) {
  const auto y = sample(Distribution::bilateral(), 5);
  const double freq = double(std::count_if(y.begin(), y.end(), [](double v) { return std::abs(v) > 1.0; })) / draws;
  const double p = std::exp(-1.0);
  EXPECT_NEAR(freq, p, 4.0 * std::sqrt(p * (1 - p) / draws));
}

TEST(Distribution, CauchyMedianAndQuartiles) {
  auto y = sample(Distribution::cauchy(), 6);
  std::sort(y.begin(), y.end());
  EXPECT_NEAR(y[draws / 2], 0.0, 0.02);
  // Quartiles of the standard Cauchy are -1 and 1.
  EXPECT_NEAR(y[draws / 4], -1.0, 0.03);
  EXPECT_NEAR(y[3 * draws / 4], 1.0, 0.03);
}

TEST(Distribution, CharacteristicFunctionValues) {
  EXPECT_EQ(Distribution::gaussian(1.0).characteristic_function(0.0), 1.0);
  EXPECT_DOUBLE_EQ(Distribution::gaussian(2.0).characteristic_function(1.0), std::exp(-2.0));
  EXPECT_DOUBLE_EQ(Distribution::bilateral().characteristic_function(1.0), 0.5);
  EXPECT_DOUBLE_EQ(Distribution::cauchy().characteristic_function(2.0), std::exp(-2.0));
  EXPECT_DOUBLE_EQ(Distribution::cauchy().characteristic_function(-2.0), std::exp(-2.0));
}

// Empirical E cos(tY) against phi(t) for every kind.
TEST(Distribution, CharacteristicFunctionMatchesSamples) {
  for (auto kind : {DistributionKind::gaussian, DistributionKind::bilateral, DistributionKind::cauchy}) {
    const Distribution dist = Distribution::make(kind, 1.0);
    const auto y = sample(dist, 11);
    for (double t : {0.3, 1.0, 2.0}) {
      double c = 0.0;
      for (double v : y) c += std::cos(t * v);
      EXPECT_NEAR(c / draws, dist.characteristic_function(t), 4.0 / std::sqrt(double(draws)))
          << to_string(kind) << " t=" << t;
    }
  }
}

TEST(Distribution, ParseAndValidate) {
  EXPECT_EQ(parse_distribution_kind("cauchy"), DistributionKind::cauchy);
  EXPECT_EQ(parse_distribution_kind(to_string(DistributionKind::bilateral)), DistributionKind::bilateral);
  EXPECT_THROW(parse_distribution_kind("uniform"), std::invalid_argument);
  EXPECT_THROW(Distribution::gaussian(0.0), std::invalid_argument);
  EXPECT_THROW(Distribution::gaussian(-1.0), std::invalid_argument);
}
