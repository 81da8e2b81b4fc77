#pragma once

#include "stochwave/waveform.hpp"

#include <string_view>

namespace stochwave {

enum class EstimatorKind { aperiodic, periodic, vector, continuous };

std::string_view to_string(EstimatorKind kind);
EstimatorKind parse_estimator_kind(std::string_view name);

/// Finite-truncation autocorrelation value. `lag` is k (discrete kinds) or s
/// (continuous); `truncation` is N, the period n, or T.
struct AutocorrEstimate {
  double lag = 0.0;
  Complex value{};
  double truncation = 0.0;
  EstimatorKind kind = EstimatorKind::aperiodic;
};

/// (1/(2N+1)) sum_{m=-N}^{N} X[m+k] conj(X[m]).
/// Requires N >= 1 and w.n_max() >= N + |k|.
AutocorrEstimate acorr_aperiodic(const DiscreteWaveform& w, Index k, Index N);

/// (1/n) sum_{m=0}^{n-1} X[m+k] conj(X[m]) with indices mod n; k is reduced mod n.
AutocorrEstimate acorr_periodic(const PeriodicWaveform& w, Index k);

/// (1/(2N+1)) sum_{n=-N}^{N} <v[n+k], v[n]>, with <a, b> = sum_i a_i conj(b_i).
AutocorrEstimate acorr_vector(const VectorWaveform& w, Index k, Index N);

/// Trapezoid rule for (1/2T) int_{-T}^{T} x(t+s) conj(x(t)) dt on the grid.
/// s and T must be grid multiples and T + |s| must not exceed the horizon.
AutocorrEstimate acorr_continuous(const ContinuousWaveform& w, double s, double T);

/// E(A_X[k]) = phi_Y(2 pi / eps)^{2|k|}, and 1 at k = 0.
/// Also the expectation for the periodic and vector constructions.
double expected_acorr(const Distribution& dist, double epsilon, Index k);

/// E(A_x(s)) = exp(-(sigma^2 / 2) |s| (2 pi / eps)^2) for the Brownian waveform.
double expected_acorr_continuous(double sigma, double epsilon, double s);

struct ClosedForm {
  double expected = 0.0;
  double variance_upper = 0.0;
  double variance_lower = 0.0;
};

/// 0 <= V(A_X[k]) <= 1 - phi_Y(2 pi / eps)^{4|k|}. Throws for k = 0.
ClosedForm variance_bounds(const Distribution& dist, double epsilon, Index k);

/// Upper bound 2|k|/(2N+1) on the shift of a finite-N aperiodic estimate
/// caused by the terms that straddle index 0 under X[-n] = X[n].
double straddle_bias(Index k, Index N);

}  // namespace stochwave
