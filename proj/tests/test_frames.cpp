#include "stochwave/frames.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
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

// Q factor of a fixed well-conditioned matrix.
MatrixXc orthonormal_columns(Index d, Index M) {
  const Index n = std::max(d, M);
  MatrixXc g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = Complex(std::cos(1.0 + i * n + j), std::sin(2.0 * i - j));
  Eigen::HouseholderQR<MatrixXc> qr(g);
  const MatrixXc q = qr.householderQ();
  return q.topLeftCorner(d, M);
}

}  // namespace

TEST(SlidingFrame, UnitVectorsAndConstantDiagonal) {
  for (Index d : {2, 3, 5}) {
    const Index M = 12;
    const FrameSet f = build_sliding_frame(params(0.7, 3), d, M);
    ASSERT_EQ(f.d(), d);
    ASSERT_EQ(f.M(), M);
    for (Index k = 0; k < M; ++k) EXPECT_NEAR(f.vectors.col(k).norm(), 1.0, 1e-12);
    const MatrixXc F = frame_operator(f.vectors);
    for (Index m = 0; m < d; ++m) EXPECT_NEAR(F(m, m).real(), double(M) / double(d), 1e-12);
  }
}

TEST(SlidingFrame, ColumnsAreWindowsOfOneWaveform) {
  const auto p = params(0.7, 5);
  const FrameSet f = build_sliding_frame(p, 3, 6);
  const DiscreteWaveform x = generate_discrete(p, 8);
  for (Index k = 1; k <= 6; ++k)
    for (Index j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(f.vectors(j, k - 1) - x[k + j] / std::sqrt(3.0)), 0.0, 1e-15);
}

TEST(SlidingFrame, OffDiagonalIsHalfMAlpha) {
  const auto p = params(1.1, 8);
  const FrameSet f = build_sliding_frame(p, 2, 3);
  const DiscreteWaveform x = generate_discrete(p, 4);
  Complex alpha{};
  for (Index k = 1; k <= 3; ++k) alpha += x[k] * std::conj(x[k + 1]);
  alpha /= 3.0;
  const MatrixXc F = frame_operator(f.vectors);
  EXPECT_NEAR(std::abs(F(0, 1) - 1.5 * alpha), 0.0, 1e-12);
  const FrameAnalysis a = analyze(f);
  ASSERT_TRUE(a.alpha.has_value());
  EXPECT_NEAR(std::abs(*a.alpha - alpha), 0.0, 1e-12);
}

TEST(SlidingFrame, TwoDimensionalEigenvaluesFromAlpha) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const FrameAnalysis a = analyze(build_sliding_frame(params(4.0, seed), 2, 32));
    ASSERT_TRUE(a.closed_form_deviation.has_value());
    EXPECT_LE(*a.closed_form_deviation, 1e-9);
  }
}

TEST(Analyze, OrthonormalColumns) {
  const FrameAnalysis a = analyze(frame_from_matrix(orthonormal_columns(4, 4)));
  for (Index j = 0; j < 4; ++j) EXPECT_NEAR(a.eigenvalues(j), 1.0, 1e-12);
  EXPECT_NEAR(a.condition_number, 1.0, 1e-12);
  EXPECT_FALSE(a.alpha.has_value());
}

TEST(Analyze, SingularValuesSquareToEigenvalues) {
  const FrameSet f = build_sensing_matrix(params(two_pi, 4), 6, 20);
  const FrameAnalysis a = analyze(f);
  Eigen::JacobiSVD<MatrixXc> svd(f.vectors);
  const VectorXr ref = svd.singularValues().reverse();
  for (Index j = 0; j < 6; ++j) {
    EXPECT_NEAR(a.singular_values(j) * a.singular_values(j), a.eigenvalues(j), 1e-9);
    EXPECT_NEAR(a.singular_values(j), ref(j), 1e-10);
  }
  EXPECT_LE(a.max_residual, 1e-10);
}

TEST(Analyze, RankDeficientHasInfiniteConditionNumber) {
  MatrixXc a = MatrixXc::Zero(2, 3);
  a(0, 0) = a(0, 1) = a(0, 2) = 1.0;
  EXPECT_TRUE(std::isinf(analyze(frame_from_matrix(a)).condition_number));
}

TEST(SensingMatrix, EntryMomentsMatchFormulas) {
  const double eps = 5.0;
  const Index d = 100, M = 1000;
  const FrameSet f = build_sensing_matrix(params(eps, 21), d, M);
  const double s = two_pi / eps;
  const double var = (1.0 - std::exp(-s * s)) / double(d);
  const Complex mean = f.vectors.mean();
  EXPECT_LE(std::abs(mean.real()), 4.0 * std::sqrt(var / double(d * M)));
  EXPECT_LE(std::abs(mean.imag()), 4.0 * std::sqrt(var / double(d * M)));
  const double sample_var = (f.vectors.array() - mean).abs2().sum() / double(d * M - 1);
  EXPECT_NEAR(sample_var / var, 1.0, 0.05);
}

TEST(SensingMatrix, LargeEpsilonCollapsesEntries) {
  const FrameSet f = build_sensing_matrix(params(1e4, 2), 4, 40);
  EXPECT_LE(f.vectors.cwiseAbs().maxCoeff(), 1e-2);
}

TEST(SensingMatrix, PrefixProperty) {
  const FrameSet a = build_sensing_matrix(params(2.0, 7), 3, 10);
  const FrameSet b = build_sensing_matrix(params(2.0, 7), 3, 25);
  EXPECT_EQ(a.vectors, b.vectors.leftCols(10));
}

TEST(SensingMatrix, Preconditions) {
  EXPECT_THROW(build_sensing_matrix(params(2.0, 7, Distribution::cauchy()), 3, 10), UnsupportedConstruction);
  EXPECT_THROW(build_sensing_matrix(params(2.0, 7), 3, 2), std::invalid_argument);
  EXPECT_THROW(build_sliding_frame(params(2.0, 7), 1, 4), std::invalid_argument);
}

TEST(Bounds, ClosedFormValues) {
  const BoundSet b = bounds(Distribution::gaussian(1.0), two_pi, 2, 4);
  EXPECT_DOUBLE_EQ(b.delta, std::sqrt(0.25 + 0.75 * std::exp(-2.0)));
  EXPECT_EQ(b.azuma_tail(0.0), 2.0);
  EXPECT_EQ(b.one_sided_tail(0.0), 1.0);
  const BoundSet tiny = bounds(Distribution::gaussian(1.0), 1e-3, 2, 100);
  EXPECT_NEAR(tiny.eig_lower, 45.0, 1e-12);
  EXPECT_NEAR(tiny.eig_upper, 55.0, 1e-12);
  EXPECT_NEAR(tiny.sigma_hat_sq, 0.5, 1e-12);
  EXPECT_THROW(bounds(Distribution::gaussian(1.0), 1.0, 3, 2), std::invalid_argument);
}

TEST(Rip, UnitColumnsWithSparsityOne) {
  const FrameSet f = build_sensing_matrix(params(two_pi, 3), 8, 30);
  EXPECT_LE(rip_estimate(f.vectors, 1, 200, 5).delta_estimate, 1e-12);
}

TEST(Rip, OrthonormalColumnsAreIsometric) {
  const MatrixXc q = orthonormal_columns(6, 6);
  EXPECT_LE(rip_estimate(q, 4, 300, 6).delta_estimate, 1e-12);
}

TEST(Rip, SensingMatrixIsReported) {
  const FrameSet f = build_sensing_matrix(params(two_pi, 3), 64, 128);
  const RipReport r = rip_estimate(f.vectors, 4, 1000, 7);
  EXPECT_GT(r.delta_estimate, 0.0);
  EXPECT_LT(r.delta_estimate, 1.0);
  EXPECT_THROW(rip_estimate(f.vectors, 0, 1000, 7), std::invalid_argument);
  EXPECT_THROW(rip_estimate(f.vectors, 4, 10, 7), std::invalid_argument);
}

TEST(ConditionExperiment, TrendAndThreadIndependence) {
  const std::vector<Index> ms{10, 200};
  const auto one = condition_number_experiment(params(1e-4, 3), 3, ms, 50, 1);
  const auto two = condition_number_experiment(params(1e-4, 3), 3, ms, 50, 3);
  ASSERT_EQ(one.size(), 2u);
  EXPECT_LT(one[1].mean_cond, one[0].mean_cond);
  EXPECT_LE(one[0].p5, one[0].p95);
  EXPECT_EQ(one[0].mean_cond, two[0].mean_cond);
  EXPECT_EQ(one[1].p95, two[1].p95);
}

TEST(SingularTail, LargeDeviationNeverSeen) {
  const auto rep = singular_value_tail_check(params(two_pi, 4), 8, 32, 0.05, 40.0, 60);
  EXPECT_LT(rep.bound, 1.0 / 60.0);
  EXPECT_EQ(rep.frequency, 0.0);
  EXPECT_EQ(rep.positive_smallest, 60);
  EXPECT_THROW(singular_value_tail_check(params(two_pi, 4), 8, 32, 0.05, 0.5, 10), std::invalid_argument);
}

TEST(Percentile, LinearInterpolation) {
  EXPECT_DOUBLE_EQ(percentile({4.0, 1.0, 3.0, 2.0}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(percentile({4.0, 1.0, 3.0, 2.0}, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(percentile({4.0, 1.0, 3.0, 2.0}, 1.0), 4.0);
  EXPECT_THROW(percentile({}, 0.5), std::invalid_argument);
}
