#pragma once

#include "stochwave/autocorr.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace stochwave {

/// Thread count from STOCHWAVE_THREADS, else hardware concurrency (>= 1).
int default_threads();

/// Runs per_trial(t) for t = 0..trials-1 on up to `threads` workers and
/// returns the results in trial order. The first exception thrown by any
/// trial is rethrown after all workers join.
template <typename Result>
std::vector<Result> run_trials(Index trials, int threads,
                               const std::function<Result(Index)>& per_trial) {
  std::vector<Result> results(static_cast<std::size_t>(trials));
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(trials)));
  if (workers == 1) {
    for (Index t = 0; t < trials; ++t) results[static_cast<std::size_t>(t)] = per_trial(t);
    return results;
  }
  std::atomic<Index> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (Index t = next++; t < trials; t = next++) {
          try {
            results[static_cast<std::size_t>(t)] = per_trial(t);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = trials;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

/// Monte Carlo summary of a complex-valued statistic.
///
/// stderr_* are sample standard deviations over sqrt(trials). var_sample is
/// the unbiased sample variance E|a - mean|^2 and var_stderr the standard
/// error of that estimate (sd of |a_i - mean|^2 over sqrt(trials)).
struct MCStats {
  Complex mean{};
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  double var_sample = 0.0;
  double var_stderr = 0.0;
  Index trials = 0;
};

/// Summary of one column of per-trial samples. Requires >= 2 samples.
MCStats summarize(std::span<const Complex> samples);

/// Which estimator an autocorrelation Monte Carlo run evaluates.
struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::aperiodic;
  Index N = 0;        // truncation (aperiodic, vector) or period n (periodic)
  Index d = 2;        // vector dimension
  double T = 0.0;     // continuous truncation
  double dt = 0.01;   // continuous grid step
};

/// Draws `trials` independent waveforms (trial t on params.with_stream(t)),
/// evaluates the estimator at every lag on each, and summarizes per lag.
/// Lags must be integral for the discrete kinds.
std::vector<MCStats> mc_expected_acorr(const WaveformParams& params, const EstimatorSpec& spec,
                                       std::span<const double> lags, Index trials,
                                       int threads = 1);

/// Paired dt-refinement run for the continuous estimator: every trial path is
/// evaluated as drawn and after refine(), so the two summaries share their
/// Brownian paths. Returns {coarse, fine} per lag.
struct RefinementStats {
  MCStats coarse;
  MCStats fine;
};
std::vector<RefinementStats> mc_continuous_refinement(const WaveformParams& params, double T,
                                                      double dt, std::span<const double> lags,
                                                      Index trials, int threads = 1);

}  // namespace stochwave
