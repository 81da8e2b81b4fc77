#include "stochwave/frames.hpp"

#include "stochwave/jacobi.hpp"
#include "stochwave/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stochwave {

std::string_view to_string(FrameKind kind) {
  switch (kind) {
    case FrameKind::sliding: return "sliding";
    case FrameKind::sensing: return "sensing";
    case FrameKind::custom: return "custom";
  }
  return "unknown";
}

FrameKind parse_frame_kind(std::string_view name) {
  if (name == "sliding") return FrameKind::sliding;
  if (name == "sensing") return FrameKind::sensing;
  throw std::invalid_argument("unknown frame kind '" + std::string(name) + "' (expected sliding|sensing)");
}

FrameSet build_sliding_frame(const WaveformParams& params, Index d, Index M) {
  if (d < 2) throw std::invalid_argument("sliding frame needs d >= 2");
  if (M < d) throw std::invalid_argument("frame needs M >= d");
  const DiscreteWaveform x = generate_discrete(params, M + d - 1);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  FrameSet frame{FrameKind::sliding, MatrixXc(d, M)};
  for (Index k = 1; k <= M; ++k)
    for (Index j = 0; j < d; ++j) frame.vectors(j, k - 1) = norm * x[k + j];
  return frame;
}

FrameSet build_sensing_matrix(const WaveformParams& params, Index d, Index M) {
  params.validate();
  if (d < 1) throw std::invalid_argument("sensing matrix needs d >= 1");
  if (M < d) throw std::invalid_argument("sensing matrix needs M >= d");
  if (params.dist.kind() != DistributionKind::gaussian)
    throw UnsupportedConstruction("sensing matrix construction is defined for gaussian Y only");
  const double scale = params.phase_scale();
  const double sigma = params.dist.scale();
  const double center = std::exp(-0.5 * sigma * sigma * scale * scale);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));

  RandomStream rng(params.seed);
  FrameSet frame{FrameKind::sensing, MatrixXc(d, M)};
  for (Index col = 0; col < M; ++col)
    for (Index row = 0; row < d; ++row)
      frame.vectors(row, col) = norm * (phasor(scale * params.dist.sample(rng)) - center);
  return frame;
}

FrameSet frame_from_matrix(MatrixXc vectors) {
  if (vectors.size() == 0) throw std::invalid_argument("frame matrix is empty");
  if (vectors.cols() < vectors.rows()) throw std::invalid_argument("frame needs M >= d");
  return {FrameKind::custom, std::move(vectors)};
}

double condition_number(const VectorXr& ascending) {
  if (ascending.size() == 0) throw std::invalid_argument("condition_number: no eigenvalues");
  const double lo = ascending(0);
  if (lo <= singular_floor) return std::numeric_limits<double>::infinity();
  return ascending(ascending.size() - 1) / lo;
}

ColumnNormStats column_norms(const MatrixXc& a) {
  const VectorXr norms = a.colwise().norm().transpose();
  return {norms.minCoeff(), norms.maxCoeff(), norms.mean()};
}

FrameAnalysis analyze(const FrameSet& frame) {
  FrameAnalysis out;
  const MatrixXc& a = frame.vectors;
  MatrixXc f = frame_operator(a);
  out.hermitian_defect = (f - f.adjoint()).cwiseAbs().maxCoeff();
  if (out.hermitian_defect > 1e-12 * std::max(1.0, f.cwiseAbs().maxCoeff()))
    throw std::runtime_error("frame operator is not Hermitian to 1e-12");
  f = (0.5 * (f + f.adjoint())).eval();

  const auto eig = jacobi_eigen(f);
  if (!eig.converged) throw std::runtime_error("Jacobi eigensolver did not converge");
  out.frame_operator = f;
  out.eigenvalues = eig.values;
  out.sweeps = eig.sweeps;
  out.max_residual = eigen_residual(f, eig);
  out.singular_values = eig.values.cwiseMax(0.0).cwiseSqrt();
  out.condition_number = condition_number(eig.values);
  out.column_norms = column_norms(a);

  if (frame.kind == FrameKind::sliding && frame.d() == 2) {
    // v(k) = (X[k], X[k+1]) / sqrt(2), so X[k] conj(X[k+1]) = 2 v_0 conj(v_1).
    const Index M = frame.M();
    const Complex alpha = 2.0 * (a.row(0).array() * a.row(1).array().conjugate()).sum() /
                          static_cast<double>(M);
    const double half = 0.5 * static_cast<double>(M);
    const double lo = half * (1.0 - std::abs(alpha));
    const double hi = half * (1.0 + std::abs(alpha));
    out.alpha = alpha;
    out.closed_form_deviation = std::max(std::abs(eig.values(0) - lo), std::abs(eig.values(1) - hi));
  }
  return out;
}

double BoundSet::azuma_tail(double r) const {
  const double m = static_cast<double>(M);
  return 2.0 * std::exp(-4.0 * r * r / (8.0 * m * m * m));
}

double BoundSet::one_sided_tail(double r) const {
  const double m = static_cast<double>(M);
  return std::exp(-4.0 * r * r / (8.0 * m * m * m));
}

BoundSet bounds(const Distribution& dist, double epsilon, Index d, Index M) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (d < 2) throw std::invalid_argument("bounds need d >= 2");
  if (M < d) throw std::invalid_argument("bounds need M >= d");
  const double phi = dist.characteristic_function(two_pi / epsilon);
  const double m = static_cast<double>(M);
  const double c = static_cast<double>(d) / m;

  BoundSet b;
  b.d = d;
  b.M = M;
  b.delta = std::sqrt(1.0 / m + (m - 1.0) / m * std::pow(phi, 4.0));
  b.eig_lower = 0.5 * m * (1.0 - b.delta);
  b.eig_upper = 0.5 * m * (1.0 + b.delta);
  b.sigma_hat_sq = (1.0 - phi * phi) / static_cast<double>(d);
  b.mp_lower = b.sigma_hat_sq * std::pow(1.0 - std::sqrt(c), 2);
  b.mp_upper = b.sigma_hat_sq * std::pow(1.0 + std::sqrt(c), 2);
  return b;
}

std::vector<SpectrumSample> sample_spectra(FrameKind kind, const WaveformParams& params, Index d,
                                           Index M, Index trials, int threads) {
  if (kind == FrameKind::custom) throw std::invalid_argument("sample_spectra needs sliding or sensing");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const std::function<SpectrumSample(Index)> per_trial = [&](Index t) {
    const WaveformParams trial = params.with_stream(static_cast<std::uint64_t>(t));
    const FrameSet frame = kind == FrameKind::sliding ? build_sliding_frame(trial, d, M)
                                                      : build_sensing_matrix(trial, d, M);
    const FrameAnalysis a = analyze(frame);
    SpectrumSample s;
    s.lambda_min = a.eigenvalues(0);
    s.lambda_max = a.eigenvalues(a.eigenvalues.size() - 1);
    s.condition_number = a.condition_number;
    s.closed_form_deviation = a.closed_form_deviation.value_or(0.0);
    s.residual = a.max_residual;
    s.singular_defect = (a.singular_values.array().square() - a.eigenvalues.array()).abs().maxCoeff();
    return s;
  };
  return run_trials<SpectrumSample>(trials, threads, per_trial);
}

SingularTailReport singular_value_tail_check(const WaveformParams& params, Index d, Index M,
                                             double eps0, double r, Index trials, int threads) {
  if (trials < 50) throw std::invalid_argument("singular value tail check needs trials >= 50");
  if (!(eps0 >= 0.0) || !(r >= 0.0)) throw std::invalid_argument("eps0 and r must be >= 0");
  const auto spectra = sample_spectra(FrameKind::sensing, params, d, M, trials, threads);

  const double phi = params.dist.characteristic_function(params.phase_scale());
  const double sigma_hat = std::sqrt((1.0 - phi * phi) / static_cast<double>(d));
  const double ratio = static_cast<double>(d) / static_cast<double>(M);
  const double root_m = std::sqrt(static_cast<double>(M));

  SingularTailReport rep;
  rep.d = d;
  rep.M = M;
  rep.trials = trials;
  rep.eps0 = eps0;
  rep.r = r;
  rep.threshold = sigma_hat * (1.0 + std::sqrt(ratio)) + eps0 + r;
  rep.bound = 2.0 * std::exp(-r * r * static_cast<double>(d) / 16.0);
  rep.min_smallest = std::numeric_limits<double>::infinity();

  Index hits = 0, raw_hits = 0;
  double sum_largest = 0.0;
  for (const auto& s : spectra) {
    const double largest = std::sqrt(std::max(s.lambda_max, 0.0));
    const double smallest = std::sqrt(std::max(s.lambda_min, 0.0));
    if (largest / root_m >= rep.threshold) ++hits;
    if (largest >= rep.threshold) ++raw_hits;
    if (smallest > 0.0) ++rep.positive_smallest;
    rep.min_smallest = std::min(rep.min_smallest, smallest);
    sum_largest += largest / root_m;
  }
  const double n = static_cast<double>(trials);
  rep.frequency = static_cast<double>(hits) / n;
  rep.raw_frequency = static_cast<double>(raw_hits) / n;
  rep.mean_largest = sum_largest / n;
  rep.binomial_stderr = std::sqrt(rep.frequency * (1.0 - rep.frequency) / n);
  rep.within_bound = rep.frequency <= rep.bound + 3.0 * rep.binomial_stderr;
  return rep;
}

RipReport rip_estimate(const MatrixXc& a, Index k, Index trials, std::uint64_t seed) {
  const Index d = a.rows();
  const Index M = a.cols();
  if (k < 1 || k > d || k > M) throw std::invalid_argument("RIP sparsity k must satisfy 1 <= k <= d");
  if (trials < 100) throw std::invalid_argument("RIP estimate needs trials >= 100");

  RipReport rep;
  rep.k = k;
  rep.trials = trials;
  rep.column_norms = column_norms(a);
  if (rep.column_norms.min <= 0.0) throw std::invalid_argument("RIP estimate: matrix has a zero column");
  const MatrixXc unit = a * a.colwise().norm().cwiseInverse().asDiagonal();

  RandomStream rng(seed);
  std::vector<Index> columns(static_cast<std::size_t>(M));
  VectorXc coeffs(k);
  for (Index t = 0; t < trials; ++t) {
    std::iota(columns.begin(), columns.end(), Index{0});
    // Partial Fisher-Yates: the first k entries become a uniform k-subset.
    for (Index i = 0; i < k; ++i) {
      const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(M - i)));
      std::swap(columns[static_cast<std::size_t>(i)], columns[static_cast<std::size_t>(j)]);
    }
    for (Index i = 0; i < k; ++i) coeffs(i) = Complex(rng.standard_normal(), rng.standard_normal());
    coeffs.normalize();
    VectorXc y = VectorXc::Zero(d);
    for (Index i = 0; i < k; ++i) y += coeffs(i) * unit.col(columns[static_cast<std::size_t>(i)]);
    rep.delta_estimate = std::max(rep.delta_estimate, std::abs(y.squaredNorm() - 1.0));
  }
  return rep;
}

std::vector<ConditionRow> condition_number_experiment(const WaveformParams& params, Index d,
                                                      std::span<const Index> M_list, Index trials,
                                                      int threads) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<Index> ms(M_list.begin(), M_list.end());
  std::sort(ms.begin(), ms.end());
  for (Index M : ms)
    if (M < d) throw std::invalid_argument("every M must be >= d");

  std::vector<ConditionRow> rows;
  for (Index M : ms) {
    const auto spectra = sample_spectra(FrameKind::sensing, params, d, M, trials, threads);
    std::vector<double> conds;
    conds.reserve(spectra.size());
    for (const auto& s : spectra) conds.push_back(s.condition_number);
    const double mean = std::accumulate(conds.begin(), conds.end(), 0.0) / static_cast<double>(conds.size());
    rows.push_back({M, mean, percentile(conds, 0.05), percentile(conds, 0.95)});
  }
  return rows;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("percentile q must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  if (values[lo] == values[hi]) return values[lo];
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

}  // namespace stochwave
