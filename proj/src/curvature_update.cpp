#include "hees/curvature_update.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hees/errors.hpp"
#include "hees/kernels.hpp"

namespace hees {

void CurvatureParams::validate() const {
  if (!(kappa > 1.0) || !std::isfinite(kappa)) throw ConfigError("kappa must be > 1");
  if (!(eta_a > 0.0 && eta_a <= 1.0)) throw ConfigError("eta_a must lie in (0, 1]");
}

Vector estimate_curvatures(const DirectionSet& directions, double f_m,
                           std::span<const double> f_plus,
                           std::span<const double> f_minus, double sigma) {
  const std::size_t pairs = directions.pair_count;
  if (f_plus.size() != pairs || f_minus.size() != pairs)
    throw ConfigError("estimate_curvatures: expected one value per used direction");
  if (!(sigma > 0.0)) throw ConfigError("estimate_curvatures: sigma must be positive");
  if (!std::isfinite(f_m)) throw EvaluationError("non-finite objective value at the mean");

  Vector h(pairs);
  const double sigma2 = sigma * sigma;
  for (std::size_t k = 0; k < pairs; ++k) {
    if (!std::isfinite(f_plus[k]) || !std::isfinite(f_minus[k]))
      throw EvaluationError("non-finite objective value at offspring pair " +
                            std::to_string(k));
    const double len2 = directions.norms[k] * directions.norms[k];
    h[k] = (f_plus[k] + f_minus[k] - 2.0 * f_m) / (sigma2 * len2);
  }
  return h;
}

CurvatureEstimates curvature_exponents(const DirectionSet& directions, double f_m,
                                       std::span<const double> f_plus,
                                       std::span<const double> f_minus, double sigma,
                                       const CurvatureParams& params) {
  params.validate();
  CurvatureEstimates est;
  est.h = estimate_curvatures(directions, f_m, f_plus, f_minus, sigma);
  est.q.assign(directions.slot_count(), 0.0);

  const double h_max = *std::max_element(est.h.begin(), est.h.end());
  if (!(h_max > 0.0)) {
    est.neutral = true;
    return est;
  }

  est.trust_floor = h_max / params.kappa;
  const std::size_t pairs = directions.pair_count;
  double mean_log = 0.0;
  for (std::size_t k = 0; k < pairs; ++k) {
    est.h[k] = std::max(est.h[k], est.trust_floor);
    est.q[k] = std::log(est.h[k]);
    mean_log += est.q[k];
  }
  mean_log /= static_cast<double>(pairs);
  const double scale = -params.eta_a / 2.0;
  for (std::size_t k = 0; k < pairs; ++k) est.q[k] = (est.q[k] - mean_log) * scale;
  return est;
}

Matrix assemble_update(const DirectionSet& directions, std::span<const double> q) {
  const std::size_t d = directions.dim;
  if (q.size() != directions.slot_count())
    throw ConfigError("assemble_update: expected one exponent per slot");
  Matrix g(d, d);
  const auto& k = simd::active();
  const double inv_blocks = 1.0 / static_cast<double>(directions.block_count);
  for (std::size_t s = 0; s < directions.slot_count(); ++s) {
    const double len2 = directions.norms[s] * directions.norms[s];
    k.rank1_update(inv_blocks * std::exp(q[s]) / len2, directions.direction(s).data(),
                   g.data(), d);
  }
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = r + 1; c < d; ++c) {
      const double avg = 0.5 * (g(r, c) + g(c, r));
      g(r, c) = avg;
      g(c, r) = avg;
    }
  }
  return g;
}

UpdateFactor compute_update_factor(const DirectionSet& directions, double f_m,
                                   std::span<const double> f_plus,
                                   std::span<const double> f_minus, double sigma,
                                   const CurvatureParams& params) {
  UpdateFactor factor;
  factor.estimates =
      curvature_exponents(directions, f_m, f_plus, f_minus, sigma, params);
  factor.g = factor.estimates.neutral ? Matrix::identity(directions.dim)
                                      : assemble_update(directions, factor.estimates.q);
  return factor;
}

Matrix apply_update(const Matrix& a, const UpdateFactor& factor) {
  return multiply(a, factor.g);
}

}  // namespace hees
