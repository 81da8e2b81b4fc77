#include "stochwave/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace stochwave {

namespace {

std::vector<Index> integral_lags(std::span<const double> lags) {
  std::vector<Index> out;
  out.reserve(lags.size());
  for (double lag : lags) {
    if (lag != std::round(lag)) throw std::invalid_argument("discrete lags must be integers");
    out.push_back(static_cast<Index>(lag));
  }
  return out;
}

Index max_abs(const std::vector<Index>& values) {
  Index m = 0;
  for (Index v : values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

std::vector<MCStats> summarize_columns(const std::vector<VectorXc>& rows, std::size_t columns) {
  std::vector<MCStats> out;
  out.reserve(columns);
  std::vector<Complex> column(rows.size());
  for (std::size_t c = 0; c < columns; ++c) {
    for (std::size_t t = 0; t < rows.size(); ++t) column[t] = rows[t](static_cast<Index>(c));
    out.push_back(summarize(column));
  }
  return out;
}

}  // namespace

int default_threads() {
  if (const char* env = std::getenv("STOCHWAVE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

MCStats summarize(std::span<const Complex> samples) {
  const auto n = static_cast<Index>(samples.size());
  if (n < 2) throw std::invalid_argument("Monte Carlo summary needs at least 2 trials");
  const double dn = static_cast<double>(n);

  Complex sum{};
  for (const Complex& a : samples) sum += a;
  MCStats s;
  s.trials = n;
  s.mean = sum / dn;

  double ss_re = 0.0, ss_im = 0.0, ss_q = 0.0;
  for (const Complex& a : samples) {
    const Complex dev = a - s.mean;
    ss_re += dev.real() * dev.real();
    ss_im += dev.imag() * dev.imag();
  }
  s.stderr_re = std::sqrt(ss_re / (dn - 1.0) / dn);
  s.stderr_im = std::sqrt(ss_im / (dn - 1.0) / dn);
  s.var_sample = (ss_re + ss_im) / (dn - 1.0);

  const double q_mean = (ss_re + ss_im) / dn;
  for (const Complex& a : samples) {
    const double q = std::norm(a - s.mean) - q_mean;
    ss_q += q * q;
  }
  s.var_stderr = std::sqrt(ss_q / (dn - 1.0) / dn);
  return s;
}

std::vector<MCStats> mc_expected_acorr(const WaveformParams& params, const EstimatorSpec& spec,
                                       std::span<const double> lags, Index trials, int threads) {
  params.validate();
  if (trials < 2) throw std::invalid_argument("trials must be >= 2");
  if (lags.empty()) throw std::invalid_argument("at least one lag is required");

  std::function<VectorXc(Index)> per_trial;
  switch (spec.kind) {
    case EstimatorKind::aperiodic: {
      if (spec.N < 1) throw std::invalid_argument("truncation N must be >= 1");
      const auto ks = integral_lags(lags);
      const Index n_max = spec.N + max_abs(ks);
      per_trial = [=, &params](Index t) {
        const DiscreteWaveform w = generate_discrete(params.with_stream(t), n_max);
        VectorXc out(static_cast<Index>(ks.size()));
        for (std::size_t i = 0; i < ks.size(); ++i) out(static_cast<Index>(i)) = acorr_aperiodic(w, ks[i], spec.N).value;
        return out;
      };
      break;
    }
    case EstimatorKind::periodic: {
      if (spec.N < 1) throw std::invalid_argument("period n must be >= 1");
      const auto ks = integral_lags(lags);
      per_trial = [=, &params](Index t) {
        const PeriodicWaveform w = generate_periodic(params.with_stream(t), spec.N);
        VectorXc out(static_cast<Index>(ks.size()));
        for (std::size_t i = 0; i < ks.size(); ++i) out(static_cast<Index>(i)) = acorr_periodic(w, ks[i]).value;
        return out;
      };
      break;
    }
    case EstimatorKind::vector: {
      if (spec.N < 1) throw std::invalid_argument("truncation N must be >= 1");
      if (spec.d < 2) throw std::invalid_argument("vector dimension d must be >= 2");
      const auto ks = integral_lags(lags);
      const Index m_max = spec.N + max_abs(ks);
      per_trial = [=, &params](Index t) {
        const VectorWaveform w = generate_vector(params.with_stream(t), spec.d, m_max);
        VectorXc out(static_cast<Index>(ks.size()));
        for (std::size_t i = 0; i < ks.size(); ++i) out(static_cast<Index>(i)) = acorr_vector(w, ks[i], spec.N).value;
        return out;
      };
      break;
    }
    case EstimatorKind::continuous: {
      if (!(spec.T > 0.0) || !(spec.dt > 0.0)) throw std::invalid_argument("continuous T and dt must be > 0");
      const std::vector<double> ss(lags.begin(), lags.end());
      const double horizon = spec.T + max_abs(lags);
      per_trial = [=, &params](Index t) {
        const ContinuousWaveform w = generate_continuous(params.with_stream(t), horizon, spec.dt);
        VectorXc out(static_cast<Index>(ss.size()));
        for (std::size_t i = 0; i < ss.size(); ++i) out(static_cast<Index>(i)) = acorr_continuous(w, ss[i], spec.T).value;
        return out;
      };
      break;
    }
  }
  const auto rows = run_trials<VectorXc>(trials, threads, per_trial);
  return summarize_columns(rows, lags.size());
}

std::vector<RefinementStats> mc_continuous_refinement(const WaveformParams& params, double T,
                                                      double dt, std::span<const double> lags,
                                                      Index trials, int threads) {
  params.validate();
  if (trials < 2) throw std::invalid_argument("trials must be >= 2");
  const std::vector<double> ss(lags.begin(), lags.end());
  const double horizon = T + max_abs(lags);
  const auto count = static_cast<Index>(ss.size());
  const std::function<VectorXc(Index)> per_trial = [&](Index t) {
    const WaveformParams trial = params.with_stream(t);
    const ContinuousWaveform coarse = generate_continuous(trial, horizon, dt);
    const ContinuousWaveform fine = refine(coarse, stream_seed(trial.seed, 1));
    VectorXc out(2 * count);
    for (Index i = 0; i < count; ++i) {
      out(i) = acorr_continuous(coarse, ss[static_cast<std::size_t>(i)], T).value;
      out(count + i) = acorr_continuous(fine, ss[static_cast<std::size_t>(i)], T).value;
    }
    return out;
  };
  const auto rows = run_trials<VectorXc>(trials, threads, per_trial);
  const auto stats = summarize_columns(rows, static_cast<std::size_t>(2 * count));
  std::vector<RefinementStats> out;
  for (Index i = 0; i < count; ++i)
    out.push_back({stats[static_cast<std::size_t>(i)], stats[static_cast<std::size_t>(count + i)]});
  return out;
}

}  // namespace stochwave
