#pragma once

#include "stochwave/random.hpp"

#include <string>
#include <string_view>

namespace stochwave {

enum class DistributionKind { gaussian, bilateral, cauchy };

std::string_view to_string(DistributionKind kind);
DistributionKind parse_distribution_kind(std::string_view name);

/// Symmetric law of the phase increments Y.
///
/// All three kinds have even densities, so the characteristic function is
/// real and decays to zero at infinity:
///   gaussian(sigma)  phi(t) = exp(-sigma^2 t^2 / 2)
///   bilateral        density e^{-|x|}/2, phi(t) = 1 / (1 + t^2)
///   cauchy           density 1 / (pi (1 + x^2)), phi(t) = exp(-|t|)
/// Bilateral and Cauchy have unit scale.
class Distribution {
 public:
  static Distribution gaussian(double sigma = 1.0);
  static Distribution bilateral();
  static Distribution cauchy();
  static Distribution make(DistributionKind kind, double sigma = 1.0);

  DistributionKind kind() const { return kind_; }
  /// Scale parameter; sigma for the Gaussian, 1 otherwise.
  double scale() const { return scale_; }

  double sample(RandomStream& rng) const;
  double characteristic_function(double t) const;

  bool operator==(const Distribution&) const = default;

 private:
  Distribution(DistributionKind kind, double scale) : kind_(kind), scale_(scale) {}

  DistributionKind kind_;
  double scale_;
};

}  // namespace stochwave
