#include "hees/step_size.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hees/errors.hpp"
#include "hees/log.hpp"

namespace hees {

double mu_eff(std::span<const double> weights) {
  double sum_sq = 0.0;
  for (double w : weights) sum_sq += w * w;
  return 1.0 / sum_sq;
}

double mu_eff_mirrored(double mu_eff, std::size_t pair_count) {
  if (pair_count == 0) throw ConfigError("mu_eff_mirrored: pair count must be positive");
  const double denom = 1.0 - (mu_eff - 1.0) / (2.0 * static_cast<double>(pair_count) - 1.0);
  // Equal weights put mu_eff at 2 * pairs and the denominator at zero.
  if (!(denom > 1e-12)) {
    throw ConfigError("mu_eff_mirrored: weight vector too flat (mu_eff = " +
                      std::to_string(mu_eff) + ")");
  }
  return mu_eff / denom;
}

double chi_d(std::size_t dim) {
  const double d = static_cast<double>(dim);
  return std::sqrt(d) * (1.0 - 1.0 / (4.0 * d) + 1.0 / (21.0 * d * d));
}

RecombinationWeights::RecombinationWeights(Vector w, std::size_t pairs)
    : w_(std::move(w)), pairs_(pairs) {
  mu_eff_ = hees::mu_eff(w_);
  mu_eff_mirrored_ = hees::mu_eff_mirrored(mu_eff_, pairs_);
}

RecombinationWeights RecombinationWeights::cma_default(std::size_t pair_count) {
  if (pair_count == 0) throw ConfigError("pair count must be positive");
  const std::size_t lambda = 2 * pair_count;
  const std::size_t mu = lambda / 2;
  Vector w(lambda, 0.0);
  const double top = std::log(static_cast<double>(mu) + 0.5);
  for (std::size_t i = 0; i < mu; ++i) w[i] = top - std::log(static_cast<double>(i + 1));
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= total;
  return RecombinationWeights(std::move(w), pair_count);
}

RecombinationWeights RecombinationWeights::from_values(Vector weights,
                                                       std::size_t pair_count) {
  if (pair_count == 0) throw ConfigError("pair count must be positive");
  if (weights.size() != 2 * pair_count)
    throw ConfigError("recombination weights: expected 2 * pair_count entries");
  if (std::any_of(weights.begin(), weights.end(),
                  [](double v) { return !(v >= 0.0) || !std::isfinite(v); }))
    throw ConfigError("recombination weights must be finite and nonnegative");
  if (!std::is_sorted(weights.begin(), weights.end(), std::greater<>()))
    throw ConfigError("recombination weights must be sorted descending");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12)
    throw ConfigError("recombination weights must sum to one");
  return RecombinationWeights(std::move(weights), pair_count);
}

CsaParams CsaParams::defaults(std::size_t dim, const RecombinationWeights& weights) {
  const double d = static_cast<double>(dim);
  const double mu = weights.mu_eff();
  CsaParams p;
  p.c_s = (mu + 2.0) / (d + mu + 5.0);
  p.d_s = 1.0 + 2.0 * std::max(0.0, std::sqrt((mu - 1.0) / (d + 1.0)) - 1.0) + p.c_s;
  p.chi_d = hees::chi_d(dim);
  return p;
}

Vector update_path(std::span<const double> path, double c_s, double mu_mirrored,
                   std::span<const double> direction_sum) {
  if (path.size() != direction_sum.size()) throw ConfigError("update_path: size mismatch");
  const double gain = std::sqrt(c_s * (2.0 - c_s) * mu_mirrored);
  Vector next(path.size());
  for (std::size_t i = 0; i < path.size(); ++i)
    next[i] = (1.0 - c_s) * path[i] + gain * direction_sum[i];
  return next;
}

double update_gs(double gs, double c_s) {
  return (1.0 - c_s) * (1.0 - c_s) * gs + c_s * (2.0 - c_s);
}

SigmaUpdate update_sigma(double sigma, std::span<const double> path, double gs,
                         const CsaParams& params) {
  SigmaUpdate out;
  const double raw =
      params.c_s / params.d_s * (norm(path) / params.chi_d - std::sqrt(gs));
  out.exponent = std::clamp(raw, -kMaxLogSigmaChange, kMaxLogSigmaChange);
  out.capped = out.exponent != raw;
  if (out.capped) {
    std::ostringstream msg;
    msg << "step-size exponent " << raw << " clamped to " << out.exponent;
    warn(msg.str());
  }
  out.sigma = sigma * std::exp(out.exponent);
  return out;
}

}  // namespace hees
