#include "stochwave/waveform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stochwave {

namespace {

VectorXc materialize_phases(const std::vector<double>& phases) {
  VectorXc out(static_cast<Index>(phases.size()));
  for (Index i = 0; i < out.size(); ++i) out(i) = phasor(phases[static_cast<std::size_t>(i)]);
  return out;
}

// Number of dt steps in T; throws unless T is a grid multiple.
Index grid_steps(double T, double dt, const char* what) {
  const double ratio = T / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument(std::string(what) + " must be a multiple of dt");
  return static_cast<Index>(rounded);
}

}  // namespace

void WaveformParams::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be finite and > 0");
}

WaveformParams WaveformParams::with_stream(std::uint64_t index) const {
  WaveformParams out = *this;
  out.seed = stream_seed(seed, index);
  return out;
}

double DrawLog::y(Index l) const {
  // Y_0 at 0, Y_{-n} at 2n-1, Y_n at 2n.
  const Index pos = l == 0 ? 0 : (l < 0 ? -2 * l - 1 : 2 * l);
  if (pos >= static_cast<Index>(draws.size())) throw std::out_of_range("DrawLog: Y index not logged");
  return draws[static_cast<std::size_t>(pos)];
}

DiscreteWaveform::DiscreteWaveform(std::vector<double> phases, WaveformParams params)
    : phases_(std::move(phases)), params_(params) {
  if (phases_.empty()) throw std::invalid_argument("discrete waveform needs at least one phase");
}

double DiscreteWaveform::phase(Index n) const {
  const Index m = n < 0 ? -n : n;
  if (m > n_max())
    throw std::out_of_range("discrete waveform index " + std::to_string(n) + " beyond n_max " +
                            std::to_string(n_max()));
  return phases_[static_cast<std::size_t>(m)];
}

VectorXc DiscreteWaveform::materialize() const { return materialize_phases(phases_); }

PeriodicWaveform::PeriodicWaveform(std::vector<double> phases, WaveformParams params)
    : phases_(std::move(phases)), params_(params) {
  if (phases_.empty()) throw std::invalid_argument("periodic waveform needs period >= 1");
}

double PeriodicWaveform::phase(Index m) const {
  const Index n = period();
  const Index r = ((m % n) + n) % n;
  return phases_[static_cast<std::size_t>(r)];
}

VectorXc PeriodicWaveform::materialize() const { return materialize_phases(phases_); }

VectorWaveform::VectorWaveform(DiscreteWaveform base, Index d) : base_(std::move(base)), d_(d) {
  if (d_ < 2) throw std::invalid_argument("vector waveform dimension d must be >= 2");
  if (base_.n_max() < d_ - 1)
    throw std::invalid_argument("vector waveform base too short for dimension d");
}

bool VectorWaveform::covers(Index m) const {
  return base_.covers(m) && base_.covers(m + d_ - 1);
}

VectorXc VectorWaveform::operator[](Index m) const {
  if (!covers(m)) throw std::out_of_range("vector waveform index " + std::to_string(m) + " not covered");
  VectorXc v(d_);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d_));
  for (Index j = 0; j < d_; ++j) v(j) = norm * base_[m + j];
  return v;
}

ContinuousWaveform::ContinuousWaveform(std::vector<double> phases, double dt, WaveformParams params)
    : phases_(std::move(phases)), dt_(dt), params_(params) {
  if (phases_.size() < 2) throw std::invalid_argument("continuous waveform needs at least one step");
  if (!(dt_ > 0.0)) throw std::invalid_argument("continuous waveform dt must be > 0");
}

double ContinuousWaveform::phase(Index j) const {
  const Index m = j < 0 ? -j : j;
  if (m > steps()) throw std::out_of_range("continuous waveform grid index beyond horizon");
  return phases_[static_cast<std::size_t>(m)];
}

VectorXc ContinuousWaveform::materialize() const { return materialize_phases(phases_); }

DiscreteWaveform generate_discrete(const WaveformParams& params, Index n_max, DrawLog* log) {
  params.validate();
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  RandomStream rng(params.seed);
  const double scale = params.phase_scale();
  std::vector<double> phases(static_cast<std::size_t>(n_max + 1));
  if (log) {
    log->draws.clear();
    log->draws.reserve(static_cast<std::size_t>(2 * n_max + 1));
  }
  auto draw = [&] {
    const double y = params.dist.sample(rng);
    if (log) log->draws.push_back(y);
    return y;
  };
  // Accumulate sum Y first and scale once, so phases are exactly linear in 1/eps.
  double sum = draw();
  phases[0] = scale * sum;
  for (Index n = 1; n <= n_max; ++n) {
    const double y_neg = draw();
    const double y_pos = draw();
    sum += y_neg + y_pos;
    phases[static_cast<std::size_t>(n)] = scale * sum;
  }
  return {std::move(phases), params};
}

PeriodicWaveform generate_periodic(const WaveformParams& params, Index n) {
  if (n < 1) throw std::invalid_argument("period n must be >= 1");
  DiscreteWaveform base = generate_discrete(params, n - 1);
  return {base.phases(), params};
}

VectorWaveform generate_vector(const WaveformParams& params, Index d, Index m_max) {
  if (d < 2) throw std::invalid_argument("vector dimension d must be >= 2");
  if (m_max < 0) throw std::invalid_argument("m_max must be >= 0");
  return {generate_discrete(params, m_max + d - 1), d};
}

ContinuousWaveform generate_continuous(const WaveformParams& params, double T, double dt,
                                       std::vector<double>* increments) {
  params.validate();
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("horizon T must be > 0");
  if (!(dt > 0.0) || dt > T) throw std::invalid_argument("dt must satisfy 0 < dt <= T");
  if (params.dist.kind() != DistributionKind::gaussian)
    throw std::invalid_argument("continuous waveform requires the gaussian distribution (Brownian motion)");
  const Index steps = grid_steps(T, dt, "horizon T");

  RandomStream rng(params.seed);
  const double step_sd = params.dist.scale() * std::sqrt(dt);
  const double scale = params.phase_scale();
  std::vector<double> phases(static_cast<std::size_t>(steps + 1));
  if (increments) {
    increments->clear();
    increments->reserve(static_cast<std::size_t>(steps));
  }
  double w = 0.0;
  phases[0] = 0.0;
  for (Index j = 1; j <= steps; ++j) {
    const double dw = step_sd * rng.standard_normal();
    if (increments) increments->push_back(dw);
    w += dw;
    phases[static_cast<std::size_t>(j)] = scale * w;
  }
  return {std::move(phases), dt, params};
}

ContinuousWaveform refine(const ContinuousWaveform& w, std::uint64_t seed) {
  RandomStream rng(seed);
  const WaveformParams& params = w.params();
  const double half = 0.5 * w.dt();
  // Bridge midpoint of an interval of length dt has variance sigma^2 dt / 4.
  const double mid_sd = params.phase_scale() * params.dist.scale() * std::sqrt(0.5 * half);
  const auto& coarse = w.phases();
  std::vector<double> fine(2 * coarse.size() - 1);
  for (std::size_t j = 0; j + 1 < coarse.size(); ++j) {
    fine[2 * j] = coarse[j];
    fine[2 * j + 1] = 0.5 * (coarse[j] + coarse[j + 1]) + mid_sd * rng.standard_normal();
  }
  fine.back() = coarse.back();
  return {std::move(fine), half, params};
}

}  // namespace stochwave
