#include "stochwave/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stochwave {

std::string_view to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::gaussian: return "gaussian";
    case DistributionKind::bilateral: return "bilateral";
    case DistributionKind::cauchy: return "cauchy";
  }
  return "unknown";
}

DistributionKind parse_distribution_kind(std::string_view name) {
  if (name == "gaussian") return DistributionKind::gaussian;
  if (name == "bilateral") return DistributionKind::bilateral;
  if (name == "cauchy") return DistributionKind::cauchy;
  throw std::invalid_argument("unknown distribution '" + std::string(name) +
                              "' (expected gaussian|bilateral|cauchy)");
}

Distribution Distribution::gaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("gaussian sigma must be finite and > 0");
  return {DistributionKind::gaussian, sigma};
}

Distribution Distribution::bilateral() { return {DistributionKind::bilateral, 1.0}; }

Distribution Distribution::cauchy() { return {DistributionKind::cauchy, 1.0}; }

Distribution Distribution::make(DistributionKind kind, double sigma) {
  switch (kind) {
    case DistributionKind::gaussian: return gaussian(sigma);
    case DistributionKind::bilateral: return bilateral();
    case DistributionKind::cauchy: return cauchy();
  }
  throw std::invalid_argument("unknown distribution kind");
}

double Distribution::sample(RandomStream& rng) const {
  switch (kind_) {
    case DistributionKind::gaussian:
      return scale_ * rng.standard_normal();
    case DistributionKind::bilateral: {
      // Unit exponential by inversion, sign from an independent bit.
      const double e = -std::log(rng.uniform_open());
      return (rng.next_u64() >> 63) ? -e : e;
    }
    case DistributionKind::cauchy:
      return std::tan(std::numbers::pi * (rng.uniform_open() - 0.5));
  }
  return 0.0;
}

double Distribution::characteristic_function(double t) const {
  switch (kind_) {
    case DistributionKind::gaussian: return std::exp(-0.5 * scale_ * scale_ * t * t);
    case DistributionKind::bilateral: return 1.0 / (1.0 + t * t);
    case DistributionKind::cauchy: return std::exp(-std::abs(t));
  }
  return 0.0;
}

}  // namespace stochwave
