#pragma once

#include "stochwave/waveform.hpp"

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace stochwave {

enum class FrameKind { sliding, sensing, custom };

std::string_view to_string(FrameKind kind);
FrameKind parse_frame_kind(std::string_view name);

/// M vectors in C^d stored as the columns of a d x M matrix A, so the frame
/// operator is A A^*.
struct FrameSet {
  FrameKind kind = FrameKind::custom;
  MatrixXc vectors;

  Index d() const { return vectors.rows(); }
  Index M() const { return vectors.cols(); }
};

/// v(k) = (X[k], ..., X[k+d-1]) / sqrt(d), k = 1..M, from one discrete
/// realization. Throws if d < 2 or M < d.
FrameSet build_sliding_frame(const WaveformParams& params, Index d, Index M);

/// A = (1/sqrt(d)) [exp(i (2 pi/eps) Y_mn) - exp(-(sigma^2/2)(2 pi/eps)^2)],
/// Y_mn i.i.d. N(0, sigma^2), filled column by column so that the matrix for
/// M columns is a prefix of the matrix for M' > M on the same seed.
/// Throws std::invalid_argument for d < 1 or M < d, and UnsupportedConstruction
/// for a non-Gaussian distribution.
FrameSet build_sensing_matrix(const WaveformParams& params, Index d, Index M);

/// Wraps an arbitrary d x M matrix; throws if M < d or the matrix is empty.
FrameSet frame_from_matrix(MatrixXc vectors);

struct UnsupportedConstruction : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <typename Derived>
Matrix<typename Derived::Scalar> frame_operator(const Eigen::MatrixBase<Derived>& a) {
  return a * a.adjoint();
}

/// Eigenvalues at or below this are treated as zero by condition_number.
inline constexpr double singular_floor = 1e-12;

/// lambda_max / lambda_min of ascending eigenvalues; +inf if lambda_min <= 1e-12.
double condition_number(const VectorXr& ascending);

struct ColumnNormStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};
ColumnNormStats column_norms(const MatrixXc& a);

struct FrameAnalysis {
  MatrixXc frame_operator;
  VectorXr eigenvalues;       // ascending
  VectorXr singular_values;   // ascending, sqrt of clamped eigenvalues
  double condition_number = std::numeric_limits<double>::infinity();
  double hermitian_defect = 0.0;  // max |F - F^*|
  double max_residual = 0.0;      // max ||F q - lambda q||
  int sweeps = 0;
  ColumnNormStats column_norms;
  // d = 2 sliding frames only.
  std::optional<Complex> alpha;
  std::optional<double> closed_form_deviation;  // max |lambda - (M/2)(1 -+ |alpha|)|
};

/// Jacobi eigendecomposition of the frame operator plus derived quantities.
/// Throws std::runtime_error if the frame operator is not Hermitian to 1e-12
/// or the eigensolver fails to converge.
FrameAnalysis analyze(const FrameSet& frame);

/// Closed-form comparison values.
///
/// delta = sqrt(1/M + (M-1)/M phi^4) with phi = phi_Y(2 pi / eps) (for the
/// Gaussian, phi^4 = exp(-2 sigma^2 (2 pi/eps)^2)); eigenvalue bounds
/// (M/2)(1 -+ delta) hold for the d = 2 sliding frame. sigma_hat_sq =
/// (1 - phi^2)/d is the entry variance of the sensing matrix and mp_* are
/// sigma_hat_sq (1 -+ sqrt(d/M))^2.
struct BoundSet {
  Index d = 2;
  Index M = 2;
  double delta = 1.0;
  double eig_lower = 0.0;
  double eig_upper = 0.0;
  double sigma_hat_sq = 0.0;
  double mp_lower = 0.0;
  double mp_upper = 0.0;

  /// 2 exp(-4 r^2 / (8 M^3)): two-sided deviation of lambda_min or lambda_max.
  double azuma_tail(double r) const;
  /// exp(-4 r^2 / (8 M^3)): one-sided excursion beyond eig_lower or eig_upper.
  double one_sided_tail(double r) const;
};

/// Throws std::invalid_argument unless M >= d >= 2 and epsilon > 0.
BoundSet bounds(const Distribution& dist, double epsilon, Index d, Index M);

/// Per-trial spectrum extremes for a family of random frames.
struct SpectrumSample {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double condition_number = 0.0;
  double closed_form_deviation = 0.0;  // sliding d = 2 only
  double residual = 0.0;
  double singular_defect = 0.0;        // max |s_j^2 - lambda_j|
};

/// Builds and analyzes one frame per trial on params.with_stream(t).
/// `kind` must be sliding or sensing.
std::vector<SpectrumSample> sample_spectra(FrameKind kind, const WaveformParams& params, Index d,
                                           Index M, Index trials, int threads = 1);

/// Empirical frequency of s_d(A / sqrt(M)) >= sigma_hat (1 + sqrt(d/M)) + eps0 + r
/// for the sensing matrix, against the bound 2 exp(-r^2 d / 16).
struct SingularTailReport {
  Index d = 0;
  Index M = 0;
  Index trials = 0;
  double eps0 = 0.0;
  double r = 0.0;
  double threshold = 0.0;
  double frequency = 0.0;
  double raw_frequency = 0.0;  // same event for s_d(A) without the 1/sqrt(M) normalization
  double bound = 0.0;
  double binomial_stderr = 0.0;
  bool within_bound = false;
  double mean_largest = 0.0;   // mean s_d(A / sqrt(M))
  double min_smallest = 0.0;   // min over trials of s_1(A)
  Index positive_smallest = 0; // trials with s_1(A) > 0
};

/// Requires trials >= 50.
SingularTailReport singular_value_tail_check(const WaveformParams& params, Index d, Index M,
                                             double eps0, double r, Index trials,
                                             int threads = 1);

struct RipReport {
  double delta_estimate = 0.0;  // a lower bound on the true delta_k
  Index k = 0;
  Index trials = 0;
  ColumnNormStats column_norms;  // before rescaling
};

/// Monte Carlo lower estimate of the restricted isometry constant delta_k:
/// max over random k-sparse unit x of | ||A x||^2 - 1 | after rescaling every
/// column of A to unit norm. Requires 1 <= k <= d and trials >= 100.
RipReport rip_estimate(const MatrixXc& a, Index k, Index trials, std::uint64_t seed);

struct ConditionRow {
  Index M = 0;
  double mean_cond = 0.0;
  double p5 = 0.0;
  double p95 = 0.0;
};

/// Condition numbers of sensing-matrix frame operators per M (sorted by M).
std::vector<ConditionRow> condition_number_experiment(const WaveformParams& params, Index d,
                                                      std::span<const Index> M_list, Index trials,
                                                      int threads = 1);

/// Linear-interpolated percentile (q in [0, 1]) of unsorted values.
double percentile(std::vector<double> values, double q);

}  // namespace stochwave
