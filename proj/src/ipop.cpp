#include <utility>

#include "hees/errors.hpp"
#include "hees/optimizer.hpp"

namespace hees {

RunResult ipop_run(const Objective& objective, std::size_t dim, std::size_t budget,
                   double target_f, const MeanSampler& m_sampler,
                   const IpopOptions& options, Rng& rng, const Observer& observer) {
  if (dim == 0) throw ConfigError("dimension must be positive");
  if (!m_sampler && !options.m0) throw ConfigError("ipop_run: no initial mean source");

  OptimizerOptions opt = options.optimizer;
  std::size_t pairs = opt.pair_count.value_or(default_pair_count(dim));
  if (2 * pairs + 1 > budget)
    throw ConfigError("budget must cover at least one generation");

  RunResult total;
  std::size_t restart = 0;
  for (;;) {
    Vector m0 = (restart == 0 && options.m0) ? *options.m0 : m_sampler(rng);
    if (m0.size() != dim) throw ConfigError("initial mean has the wrong dimension");
    opt.pair_count = pairs;
    if (opt.weights && opt.weights->size() != 2 * pairs) opt.weights.reset();

    Optimizer es(std::move(m0), options.sigma0, std::nullopt, opt, std::move(rng));
    es.set_restart_index(restart);
    es.set_eval_offset(total.evals_used);

    RunLimits limits;
    limits.budget = budget - total.evals_used;
    limits.target_f = target_f;
    limits.stop_fitness_std = options.stop_fitness_std;
    RunResult inner = es.run(objective, limits, observer);
    rng = std::move(es.rng());

    total.evals_used += inner.evals_used;
    total.pair_counts.push_back(pairs);
    total.records.insert(total.records.end(), inner.records.begin(), inner.records.end());
    if (inner.best_f < total.best_f) {
      total.best_f = inner.best_f;
      total.best_x = inner.best_x;
    }
    total.restart_count = restart;
    total.termination = inner.termination;

    if (inner.termination != Termination::converged || !options.restarts) break;
    const std::size_t next_pairs = 2 * pairs;
    if (total.evals_used + 2 * next_pairs + 1 > budget) {
      total.termination = Termination::budget_exhausted;
      break;
    }
    pairs = next_pairs;
    ++restart;
  }
  return total;
}

}  // namespace hees
