#include "hees/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hees/errors.hpp"
#include "hees/orthogonal_sampler.hpp"

namespace hees {
namespace {

double checked(double value, const char* where) {
  if (!std::isfinite(value))
    throw EvaluationError(std::string("non-finite objective value at ") + where);
  return value;
}

double population_std(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / n);
}

RecombinationWeights make_weights(const OptimizerOptions& options, std::size_t pairs) {
  if (options.weights) return RecombinationWeights::from_values(*options.weights, pairs);
  return RecombinationWeights::cma_default(pairs);
}

std::size_t resolve_pairs(const OptimizerOptions& options, std::size_t dim) {
  if (dim == 0) throw ConfigError("dimension must be positive");
  const std::size_t pairs = options.pair_count.value_or(default_pair_count(dim));
  if (pairs == 0) throw ConfigError("pair count must be positive");
  return pairs;
}

}  // namespace

std::size_t default_pair_count(std::size_t dim) {
  if (dim == 0) throw ConfigError("dimension must be positive");
  return 2 + static_cast<std::size_t>(std::floor(1.5 * std::log(static_cast<double>(dim))));
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::target_hit:
      return "target_hit";
    case Termination::budget_exhausted:
      return "budget_exhausted";
    case Termination::converged:
      return "converged";
    case Termination::numerical_failure:
      return "numerical_failure";
  }
  return "unknown";
}

Vector rank_and_weight(std::span<const double> f_values,
                       const RecombinationWeights& weights) {
  if (f_values.size() != weights.values().size())
    throw ConfigError("rank_and_weight: one value per offspring expected");
  std::vector<std::size_t> order(f_values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return f_values[a] < f_values[b];
  });
  Vector assigned(f_values.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) assigned[order[rank]] = weights[rank];
  return assigned;
}

Optimizer::Optimizer(Vector m0, double sigma0, std::optional<Matrix> a0,
                     const OptimizerOptions& options, Rng rng)
    : weights_(make_weights(options, resolve_pairs(options, m0.size()))),
      csa_(CsaParams::defaults(m0.size(), weights_)),
      curvature_(options.curvature),
      rng_(std::move(rng)) {
  const std::size_t d = m0.size();
  if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) throw ConfigError("sigma0 must be positive");
  if (std::any_of(m0.begin(), m0.end(), [](double v) { return !std::isfinite(v); }))
    throw ConfigError("initial mean must be finite");
  curvature_.validate();
  if (a0) {
    if (a0->rows() != d || a0->cols() != d)
      throw ConfigError("initial transformation must be d x d");
    if (!std::isfinite(condition_number(*a0)))
      throw ConfigError("initial transformation must be invertible");
  }
  state_.mean = std::move(m0);
  state_.transform = a0 ? *std::move(a0) : Matrix::identity(d);
  state_.csa.path.assign(d, 0.0);
  state_.csa.gs = 0.0;
  state_.csa.sigma = sigma0;
  state_.pair_count = weights_.pair_count();
}

GenerationRecord Optimizer::step(const Objective& objective) {
  const std::size_t d = state_.mean.size();
  const std::size_t pairs = state_.pair_count;
  const double sigma = state_.csa.sigma;

  const DirectionSet dirs = sample_direction_blocks(d, pairs, rng_);

  // Offspring 2k is m + sigma A b_k, offspring 2k+1 is m - sigma A b_k.
  Matrix offspring(2 * pairs, d);
  for (std::size_t k = 0; k < pairs; ++k) {
    const Vector step = multiply(state_.transform, dirs.direction(k));
    auto plus = offspring.row(2 * k);
    auto minus = offspring.row(2 * k + 1);
    for (std::size_t i = 0; i < d; ++i) {
      plus[i] = state_.mean[i] + sigma * step[i];
      minus[i] = state_.mean[i] - sigma * step[i];
    }
  }

  const double f_m = checked(objective(state_.mean), "the mean");
  Vector f_values(2 * pairs);
  Vector f_plus(pairs);
  Vector f_minus(pairs);
  for (std::size_t k = 0; k < pairs; ++k) {
    f_plus[k] = f_values[2 * k] = checked(objective(offspring.row(2 * k)), "an offspring");
    f_minus[k] = f_values[2 * k + 1] =
        checked(objective(offspring.row(2 * k + 1)), "an offspring");
  }
  state_.evals += 2 * pairs + 1;

  if (f_m < best_f_) {
    best_f_ = f_m;
    best_x_ = state_.mean;
  }
  const auto best_it = std::min_element(f_values.begin(), f_values.end());
  const std::size_t best_idx = static_cast<std::size_t>(best_it - f_values.begin());
  if (*best_it < best_f_) {
    best_f_ = *best_it;
    const auto row = offspring.row(best_idx);
    best_x_.assign(row.begin(), row.end());
  }

  // Matrix adaptation uses the current sigma and positions; the new A does
  // not influence this generation's mean update.
  const UpdateFactor factor =
      compute_update_factor(dirs, f_m, f_plus, f_minus, sigma, curvature_);
  state_.transform = apply_update(state_.transform, factor);

  const Vector w = rank_and_weight(f_values, weights_);
  Vector mean(d, 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 0.0) axpy(w[i], offspring.row(i), mean);
  }
  state_.mean = std::move(mean);

  Vector direction_sum(d, 0.0);
  for (std::size_t k = 0; k < pairs; ++k) {
    const double diff = w[2 * k] - w[2 * k + 1];
    if (diff != 0.0) axpy(diff, dirs.direction(k), direction_sum);
  }

  state_.csa.gs = update_gs(state_.csa.gs, csa_.c_s);
  state_.csa.path =
      update_path(state_.csa.path, csa_.c_s, weights_.mu_eff_mirrored(), direction_sum);
  state_.csa.sigma = update_sigma(sigma, state_.csa.path, state_.csa.gs, csa_).sigma;
  ++state_.generation;

  GenerationRecord rec;
  rec.restart_index = restart_index_;
  rec.generation = state_.generation;
  rec.evals = eval_offset_ + state_.evals;
  rec.pair_count = pairs;
  rec.f_m = f_m;
  rec.best_f = *best_it;
  rec.best_f_so_far = best_f_;
  rec.sigma = state_.csa.sigma;
  rec.cond_c = condition_number(state_.transform);
  rec.fitness_std = population_std(f_values);
  rec.log_det_g = factor.estimates.neutral ? 0.0 : log_abs_determinant(factor.g);
  return rec;
}

RunResult Optimizer::run(const Objective& objective, const RunLimits& limits,
                         const Observer& observer) {
  if (limits.budget < evals_per_generation())
    throw ConfigError("budget must cover at least one generation (" +
                      std::to_string(evals_per_generation()) + " evaluations)");
  RunResult result;
  result.pair_counts.push_back(state_.pair_count);
  result.termination = Termination::budget_exhausted;
  while (state_.evals + evals_per_generation() <= limits.budget) {
    GenerationRecord rec;
    try {
      rec = step(objective);
    } catch (const EvaluationError&) {
      result.termination = Termination::numerical_failure;
      break;
    }
    result.records.push_back(rec);
    if (observer) observer(state_, rec);

    if (rec.best_f_so_far <= limits.target_f) {
      result.termination = Termination::target_hit;
      break;
    }
    if (!(std::sqrt(rec.cond_c) <= kMaxTransformCondition) || !(rec.sigma > 0.0) ||
        !std::isfinite(rec.sigma)) {
      result.termination = Termination::numerical_failure;
      break;
    }
    if (rec.fitness_std < limits.stop_fitness_std) {
      result.termination = Termination::converged;
      break;
    }
  }
  result.best_x = best_x_;
  result.best_f = best_f_;
  result.evals_used = state_.evals;
  return result;
}

MeanSampler uniform_box_sampler(std::size_t dim, double lo, double hi) {
  if (!(lo < hi)) throw ConfigError("restart box must have lo < hi");
  return [dim, lo, hi](Rng& rng) {
    std::uniform_real_distribution<double> u(lo, hi);
    Vector m(dim);
    for (double& v : m) v = u(rng);
    return m;
  };
}

}  // namespace hees
