#pragma once

// Finite-difference curvature estimates along the sampled directions and
// the multiplicative update factor G built from them.

#include <span>

#include "hees/linalg.hpp"
#include "hees/orthogonal_sampler.hpp"

namespace hees {

struct CurvatureParams {
  double kappa = 3.0;   // trust region: estimates are clipped to >= max(h) / kappa
  double eta_a = 0.5;   // learning rate in (0, 1]

  void validate() const;
};

struct CurvatureEstimates {
  Vector h;                  // one raw estimate per used direction
  Vector q;                  // one exponent per slot; unused slots are 0
  double trust_floor = 0.0;  // max(h) / kappa, 0 on the neutral branch
  bool neutral = false;      // max(h) <= 0, update is the identity
};

// Symmetric positive definite d x d factor applied as A <- A G.
struct UpdateFactor {
  Matrix g;
  CurvatureEstimates estimates;
};

// h_k = (f_plus[k] + f_minus[k] - 2 f_m) / (sigma^2 |b_k|^2) for each used
// direction. Throws EvaluationError on non-finite function values.
Vector estimate_curvatures(const DirectionSet& directions, double f_m,
                           std::span<const double> f_plus,
                           std::span<const double> f_minus, double sigma);

// Clipped, log-centered and learning-rate-scaled exponents q.
CurvatureEstimates curvature_exponents(const DirectionSet& directions, double f_m,
                                       std::span<const double> f_plus,
                                       std::span<const double> f_minus, double sigma,
                                       const CurvatureParams& params);

// G = (1/B) sum over all slots of exp(q) b b^T / |b|^2.
Matrix assemble_update(const DirectionSet& directions, std::span<const double> q);

UpdateFactor compute_update_factor(const DirectionSet& directions, double f_m,
                                   std::span<const double> f_plus,
                                   std::span<const double> f_minus, double sigma,
                                   const CurvatureParams& params = {});

// A G
Matrix apply_update(const Matrix& a, const UpdateFactor& factor);

}  // namespace hees
