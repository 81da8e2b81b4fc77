#pragma once

#include "stochwave/distributions.hpp"
#include "stochwave/types.hpp"

#include <cstdint>
#include <vector>

namespace stochwave {

using Index = Eigen::Index;

struct WaveformParams {
  double epsilon = 1.0;
  Distribution dist = Distribution::gaussian(1.0);
  std::uint64_t seed = 0;

  /// Phase factor 2*pi/epsilon.
  double phase_scale() const { return two_pi / epsilon; }
  /// Throws std::invalid_argument unless epsilon is finite and positive.
  void validate() const;
  /// Same parameters on an independent derived stream.
  WaveformParams with_stream(std::uint64_t index) const;
};

/// Raw Y draws in generation order: Y_0, Y_{-1}, Y_1, Y_{-2}, Y_2, ...
struct DrawLog {
  std::vector<double> draws;

  /// Y_l for the logged prefix.
  double y(Index l) const;
};

/// X[n] = exp(i theta_n), theta_n = (2 pi / eps) * sum_{l=-n}^{n} Y_l for
/// n = 0..n_max, extended to negative indices by X[-n] = X[n].
/// Only the phases are stored, so |X[n]| = 1 holds structurally.
class DiscreteWaveform {
 public:
  DiscreteWaveform(std::vector<double> phases, WaveformParams params);

  Index n_max() const { return static_cast<Index>(phases_.size()) - 1; }
  const std::vector<double>& phases() const { return phases_; }
  const WaveformParams& params() const { return params_; }

  /// True if index n (either sign) is available.
  bool covers(Index n) const { return (n < 0 ? -n : n) <= n_max(); }
  /// Phase at n with the symmetric extension; throws std::out_of_range.
  double phase(Index n) const;
  Complex operator[](Index n) const { return phasor(phase(n)); }

  VectorXc materialize() const;

 private:
  std::vector<double> phases_;
  WaveformParams params_;
};

/// X on Z_n with the same cumulative construction, m = 0..n-1.
class PeriodicWaveform {
 public:
  PeriodicWaveform(std::vector<double> phases, WaveformParams params);

  Index period() const { return static_cast<Index>(phases_.size()); }
  const std::vector<double>& phases() const { return phases_; }
  const WaveformParams& params() const { return params_; }

  /// Phase at m mod n.
  double phase(Index m) const;
  Complex operator[](Index m) const { return phasor(phase(m)); }

  VectorXc materialize() const;

 private:
  std::vector<double> phases_;
  WaveformParams params_;
};

/// v[m] = (X[m], ..., X[m+d-1]) / sqrt(d) over a discrete base waveform.
class VectorWaveform {
 public:
  VectorWaveform(DiscreteWaveform base, Index d);

  const DiscreteWaveform& base() const { return base_; }
  Index dimension() const { return d_; }
  /// Largest m with v[m] fully available.
  Index m_max() const { return base_.n_max() - d_ + 1; }
  bool covers(Index m) const;

  VectorXc operator[](Index m) const;

 private:
  DiscreteWaveform base_;
  Index d_;
};

/// x(t) = exp(i (2 pi / eps) W(t)) sampled at t_j = j*dt, j = 0..T/dt, with
/// W a Brownian motion of variance sigma^2 per unit time and x(-t) = x(t).
class ContinuousWaveform {
 public:
  ContinuousWaveform(std::vector<double> phases, double dt, WaveformParams params);

  double dt() const { return dt_; }
  double horizon() const { return dt_ * static_cast<double>(phases_.size() - 1); }
  Index steps() const { return static_cast<Index>(phases_.size()) - 1; }
  const std::vector<double>& phases() const { return phases_; }
  const WaveformParams& params() const { return params_; }

  /// Phase at grid index j (either sign, even extension).
  double phase(Index j) const;
  Complex operator[](Index j) const { return phasor(phase(j)); }

  VectorXc materialize() const;

 private:
  std::vector<double> phases_;
  double dt_;
  WaveformParams params_;
};

/// Throws std::invalid_argument if n_max < 0.
DiscreteWaveform generate_discrete(const WaveformParams& params, Index n_max,
                                   DrawLog* log = nullptr);

/// Throws std::invalid_argument if n < 1.
PeriodicWaveform generate_periodic(const WaveformParams& params, Index n);

/// Base waveform extends to index m_max + d - 1. Throws if d < 2 or m_max < 0.
VectorWaveform generate_vector(const WaveformParams& params, Index d, Index m_max);

/// Brownian phase path on [0, T]; T must be a multiple of dt (to 1e-9
/// relative). Requires a Gaussian distribution, whose sigma is the diffusion
/// scale. Increments of W are i.i.d. N(0, sigma^2 dt).
ContinuousWaveform generate_continuous(const WaveformParams& params, double T, double dt,
                                       std::vector<double>* increments = nullptr);

/// Halves the grid step by Brownian-bridge midpoint insertion. Shared grid
/// points keep their phases bit-for-bit; midpoints are drawn from `seed`.
ContinuousWaveform refine(const ContinuousWaveform& w, std::uint64_t seed);

}  // namespace stochwave
