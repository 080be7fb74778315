#pragma once

// The Hessian estimation evolution strategy: mirrored orthogonal sampling,
// curvature-driven matrix adaptation, weighted recombination and CSA, plus
// an IPOP restart wrapper.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hees/curvature_update.hpp"
#include "hees/linalg.hpp"
#include "hees/random.hpp"
#include "hees/step_size.hpp"

namespace hees {

using Objective = std::function<double(std::span<const double>)>;

// 2 + floor(1.5 ln d)
std::size_t default_pair_count(std::size_t dim);

struct OptimizerOptions {
  std::optional<std::size_t> pair_count;  // default_pair_count(dim) when unset
  CurvatureParams curvature;
  std::optional<Vector> weights;  // CMA defaults when unset
};

struct OptimizerState {
  Vector mean;
  Matrix transform;  // A, with C = A^T A
  CsaState csa;
  std::size_t generation = 0;
  std::size_t evals = 0;
  std::size_t pair_count = 0;
};

struct GenerationRecord {
  std::size_t restart_index = 0;
  std::size_t generation = 0;  // within the current restart, starts at 1
  std::size_t evals = 0;       // cumulative
  std::size_t pair_count = 0;
  double f_m = 0.0;
  double best_f = 0.0;          // best offspring of this generation
  double best_f_so_far = 0.0;   // over every evaluated point, including f(m)
  double sigma = 0.0;           // after the update
  double cond_c = 1.0;          // condition number of A^T A after the update
  double fitness_std = 0.0;     // population std of the 2 * pairs offspring values
  double log_det_g = 0.0;       // log det of this generation's update factor
};

enum class Termination { target_hit, budget_exhausted, converged, numerical_failure };

std::string_view to_string(Termination t);

struct RunResult {
  Vector best_x;
  double best_f = std::numeric_limits<double>::infinity();
  std::size_t evals_used = 0;
  Termination termination = Termination::budget_exhausted;
  std::vector<GenerationRecord> records;
  std::size_t restart_count = 0;
  std::vector<std::size_t> pair_counts;  // one entry per (re)start
};

struct RunLimits {
  std::size_t budget = 0;
  double target_f = -std::numeric_limits<double>::infinity();
  double stop_fitness_std = 1e-9;
};

// Runs abort with numerical_failure once cond(A) exceeds this.
inline constexpr double kMaxTransformCondition = 1e14;

// Called after every generation with the updated state.
using Observer = std::function<void(const OptimizerState&, const GenerationRecord&)>;

// Offspring order is (plus_0, minus_0, plus_1, minus_1, ...). Returns the
// weight each offspring receives when ranked ascending by f; ties keep
// offspring order.
Vector rank_and_weight(std::span<const double> f_values,
                       const RecombinationWeights& weights);

class Optimizer {
 public:
  Optimizer(Vector m0, double sigma0, std::optional<Matrix> a0,
            const OptimizerOptions& options, Rng rng);

  // One generation. Throws EvaluationError on non-finite objective values.
  GenerationRecord step(const Objective& objective);

  // Steps until best_f_so_far <= target, the offspring std drops below the
  // threshold, the next generation would exceed the budget, or the
  // transformation degenerates.
  RunResult run(const Objective& objective, const RunLimits& limits,
                const Observer& observer = {});

  const OptimizerState& state() const { return state_; }
  const RecombinationWeights& weights() const { return weights_; }
  const CsaParams& csa_params() const { return csa_; }
  const CurvatureParams& curvature_params() const { return curvature_; }
  std::size_t evals_per_generation() const { return 2 * state_.pair_count + 1; }

  const Vector& best_x() const { return best_x_; }
  double best_f() const { return best_f_; }

  void set_restart_index(std::size_t index) { restart_index_ = index; }
  void set_eval_offset(std::size_t offset) { eval_offset_ = offset; }

  Rng& rng() { return rng_; }

 private:
  OptimizerState state_;
  RecombinationWeights weights_;
  CsaParams csa_;
  CurvatureParams curvature_;
  Rng rng_;
  Vector best_x_;
  double best_f_ = std::numeric_limits<double>::infinity();
  std::size_t restart_index_ = 0;
  std::size_t eval_offset_ = 0;
};

using MeanSampler = std::function<Vector(Rng&)>;

// Uniform in [lo, hi]^dim.
MeanSampler uniform_box_sampler(std::size_t dim, double lo, double hi);

struct IpopOptions {
  double sigma0 = 2.0;
  std::optional<Vector> m0;  // first start only; restarts draw from the sampler
  OptimizerOptions optimizer;
  double stop_fitness_std = 1e-9;
  bool restarts = true;  // false: a single run
};

// Restarts with doubled pair count after every convergence stop until the
// target is hit or the budget cannot pay for another generation. Records
// carry the restart index and cumulative evaluation counts.
RunResult ipop_run(const Objective& objective, std::size_t dim, std::size_t budget,
                   double target_f, const MeanSampler& m_sampler,
                   const IpopOptions& options, Rng& rng,
                   const Observer& observer = {});

}  // namespace hees
