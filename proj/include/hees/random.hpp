#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace hees {

// The single source of randomness. Everything stochastic draws from an Rng
// passed in by the owner, so a run is reproducible from its seed.
using Rng = std::mt19937_64;

inline double standard_normal(Rng& rng) {
  std::normal_distribution<double> normal;
  return normal(rng);
}

inline void fill_standard_normal(Rng& rng, std::span<double> out) {
  std::normal_distribution<double> normal;
  for (double& v : out) v = normal(rng);
}

}  // namespace hees
