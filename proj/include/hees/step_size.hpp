#pragma once

// Cumulative step-size adaptation for mirrored, orthogonal sampling.

#include <cstddef>
#include <span>

#include "hees/linalg.hpp"

namespace hees {

// 1 / sum w_i^2
double mu_eff(std::span<const double> weights);

// Effective selection mass corrected for the shortening of the weighted
// step under mirrored pairs: mu_eff / (1 - (mu_eff - 1) / (2 pairs - 1)).
// Throws ConfigError at the pole (all 2*pairs weights equal).
double mu_eff_mirrored(double mu_eff, std::size_t pair_count);

// Expected norm of a standard normal vector in R^d (series approximation).
double chi_d(std::size_t dim);

// Recombination weights over the 2 * pair_count offspring, best first.
class RecombinationWeights {
 public:
  // CMA-ES defaults for lambda = 2 pairs, mu = pairs:
  // w_i ~ ln(mu + 1/2) - ln i for i <= mu, zero otherwise.
  static RecombinationWeights cma_default(std::size_t pair_count);

  // Validates: size 2 * pairs, nonnegative, descending, sums to one, and not
  // all equal.
  static RecombinationWeights from_values(Vector weights, std::size_t pair_count);

  std::span<const double> values() const { return w_; }
  double operator[](std::size_t rank) const { return w_[rank]; }
  std::size_t pair_count() const { return pairs_; }
  double mu_eff() const { return mu_eff_; }
  double mu_eff_mirrored() const { return mu_eff_mirrored_; }

 private:
  RecombinationWeights(Vector w, std::size_t pairs);

  Vector w_;
  std::size_t pairs_ = 0;
  double mu_eff_ = 0.0;
  double mu_eff_mirrored_ = 0.0;
};

struct CsaParams {
  double c_s = 0.0;
  double d_s = 0.0;
  double chi_d = 0.0;

  // Standard CMA-ES settings evaluated with 2 * pairs offspring and the plain
  // (uncorrected) mu_eff.
  static CsaParams defaults(std::size_t dim, const RecombinationWeights& weights);
};

struct CsaState {
  Vector path;        // p_s
  double gs = 0.0;    // warm-up normalizer, 1 - (1 - c_s)^(2t)
  double sigma = 1.0;
};

// (1 - c_s) p + sqrt(c_s (2 - c_s) mu_mirrored) * direction_sum
Vector update_path(std::span<const double> path, double c_s, double mu_mirrored,
                   std::span<const double> direction_sum);

// (1 - c_s)^2 gs + c_s (2 - c_s)
double update_gs(double gs, double c_s);

struct SigmaUpdate {
  double sigma = 0.0;
  double exponent = 0.0;  // after capping
  bool capped = false;
};

// Exponent (c_s / d_s) (|p| / chi_d - sqrt(gs)), clamped to [-1, 1]. A
// warning is emitted when the clamp binds.
inline constexpr double kMaxLogSigmaChange = 1.0;
SigmaUpdate update_sigma(double sigma, std::span<const double> path, double gs,
                         const CsaParams& params);

}  // namespace hees
