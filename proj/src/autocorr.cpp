#include "stochwave/autocorr.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace stochwave {

namespace {

// log phi_Y(t), evaluated without cancellation near t = 0.
double log_characteristic(const Distribution& dist, double t) {
  switch (dist.kind()) {
    case DistributionKind::gaussian: return -0.5 * dist.scale() * dist.scale() * t * t;
    case DistributionKind::bilateral: return -std::log1p(t * t);
    case DistributionKind::cauchy: return -std::abs(t);
  }
  return 0.0;
}

Index signed_grid_steps(double value, double dt, const char* what) {
  const double ratio = value / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, std::abs(ratio)))
    throw std::invalid_argument(std::string(what) + " must be a multiple of the grid step dt");
  return static_cast<Index>(rounded);
}

}  // namespace

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::aperiodic: return "aperiodic";
    case EstimatorKind::periodic: return "periodic";
    case EstimatorKind::vector: return "vector";
    case EstimatorKind::continuous: return "continuous";
  }
  return "unknown";
}

EstimatorKind parse_estimator_kind(std::string_view name) {
  if (name == "aperiodic" || name == "discrete") return EstimatorKind::aperiodic;
  if (name == "periodic") return EstimatorKind::periodic;
  if (name == "vector") return EstimatorKind::vector;
  if (name == "continuous") return EstimatorKind::continuous;
  throw std::invalid_argument("unknown estimator kind '" + std::string(name) + "'");
}

AutocorrEstimate acorr_aperiodic(const DiscreteWaveform& w, Index k, Index N) {
  if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
  const Index reach = N + std::abs(k);
  if (!w.covers(reach))
    throw std::invalid_argument("waveform too short: need n_max >= N + |k| = " + std::to_string(reach) +
                                ", have " + std::to_string(w.n_max()));
  Complex sum{};
  for (Index m = -N; m <= N; ++m) sum += phasor(w.phase(m + k) - w.phase(m));
  return {static_cast<double>(k), sum / static_cast<double>(2 * N + 1), static_cast<double>(N),
          EstimatorKind::aperiodic};
}

AutocorrEstimate acorr_periodic(const PeriodicWaveform& w, Index k) {
  const Index n = w.period();
  const Index shift = ((k % n) + n) % n;
  Complex sum{};
  for (Index m = 0; m < n; ++m) sum += phasor(w.phase(m + shift) - w.phase(m));
  return {static_cast<double>(shift), sum / static_cast<double>(n), static_cast<double>(n),
          EstimatorKind::periodic};
}

AutocorrEstimate acorr_vector(const VectorWaveform& w, Index k, Index N) {
  if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
  const Index d = w.dimension();
  const DiscreteWaveform& x = w.base();
  const Index low = -N + std::min<Index>(0, k);
  const Index high = N + std::max<Index>(0, k) + d - 1;
  if (!x.covers(low) || !x.covers(high))
    throw std::invalid_argument("vector waveform too short: need base n_max >= " +
                                std::to_string(std::max(-low, high)) + ", have " +
                                std::to_string(x.n_max()));
  Complex sum{};
  for (Index n = -N; n <= N; ++n) {
    Complex inner{};
    for (Index j = 0; j < d; ++j) inner += phasor(x.phase(n + k + j) - x.phase(n + j));
    sum += inner / static_cast<double>(d);
  }
  return {static_cast<double>(k), sum / static_cast<double>(2 * N + 1), static_cast<double>(N),
          EstimatorKind::vector};
}

AutocorrEstimate acorr_continuous(const ContinuousWaveform& w, double s, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("truncation T must be > 0");
  const Index shift = signed_grid_steps(s, w.dt(), "lag s");
  const Index half_width = signed_grid_steps(T, w.dt(), "truncation T");
  if (half_width + std::abs(shift) > w.steps())
    throw std::invalid_argument("T + |s| exceeds the waveform horizon " + std::to_string(w.horizon()));

  auto f = [&](Index j) { return phasor(w.phase(j + shift) - w.phase(j)); };
  Complex sum = 0.5 * (f(-half_width) + f(half_width));
  for (Index j = -half_width + 1; j < half_width; ++j) sum += f(j);
  return {s, sum / static_cast<double>(2 * half_width), T, EstimatorKind::continuous};
}

double expected_acorr(const Distribution& dist, double epsilon, Index k) {
  if (k == 0) return 1.0;
  const double t = two_pi / epsilon;
  return std::exp(2.0 * static_cast<double>(std::abs(k)) * log_characteristic(dist, t));
}

double expected_acorr_continuous(double sigma, double epsilon, double s) {
  const double t = two_pi / epsilon;
  return std::exp(-0.5 * sigma * sigma * std::abs(s) * t * t);
}

ClosedForm variance_bounds(const Distribution& dist, double epsilon, Index k) {
  if (k == 0) throw std::invalid_argument("variance bounds are stated for k != 0");
  const double t = two_pi / epsilon;
  const double lphi = log_characteristic(dist, t);
  ClosedForm out;
  out.expected = expected_acorr(dist, epsilon, k);
  out.variance_upper = -std::expm1(4.0 * static_cast<double>(std::abs(k)) * lphi);
  out.variance_lower = 0.0;
  return out;
}

double straddle_bias(Index k, Index N) {
  return 2.0 * static_cast<double>(std::abs(k)) / static_cast<double>(2 * N + 1);
}

}  // namespace stochwave
