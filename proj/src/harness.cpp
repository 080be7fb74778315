#include "hees/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hees/errors.hpp"
#include "hees/objectives.hpp"

namespace hees {

void ExperimentConfig::validate() const {
  if (std::find(problem_names().begin(), problem_names().end(), function) ==
      problem_names().end())
    throw ConfigError("unknown function: " + function);
  if (dim == 0) throw ConfigError("dim must be positive");
  if (runs == 0) throw ConfigError("runs must be >= 1");
  if (targets.empty()) throw ConfigError("at least one target is required");
  if (!std::is_sorted(targets.begin(), targets.end(), std::greater<>()))
    throw ConfigError("targets must be sorted descending");
  if (sigma0 && !(*sigma0 > 0.0)) throw ConfigError("sigma0 must be positive");
  if (m0 && m0->size() != dim) throw ConfigError("m0 must have dim entries");
  if (!(box > 0.0)) throw ConfigError("restart box half-width must be positive");
  if (!(stop_fitness_std >= 0.0)) throw ConfigError("stop-fitness-std must be >= 0");
  if (format != "csv") throw ConfigError("unsupported output format: " + format);
  CurvatureParams{kappa, eta_a}.validate();
  const std::size_t pairs = pair_count.value_or(default_pair_count(dim));
  if (pairs == 0) throw ConfigError("lambda-pairs must be positive");
  if (budget < 2 * pairs + 1)
    throw ConfigError("budget must cover one generation (" + std::to_string(2 * pairs + 1) +
                      " evaluations)");
}

std::vector<TargetHit> evals_to_targets(const Trace& trace, std::span<const double> targets,
                                        std::optional<double> f_star) {
  std::vector<TargetHit> hits;
  hits.reserve(targets.size());
  for (double target : targets) {
    TargetHit hit{target, std::nullopt};
    const double threshold = f_star ? *f_star + target : target;
    for (const auto& row : trace) {
      if (row.record.best_f_so_far <= threshold) {
        hit.evals = row.record.evals;
        break;
      }
    }
    hits.push_back(hit);
  }
  return hits;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const Problem problem = make_problem(config.function, config.dim, config.instance);

  ExperimentResult result;
  result.f_star = problem.f_star;
  const double stop_target =
      problem.f_star ? *problem.f_star + config.targets.back() : config.targets.back();

  IpopOptions options;
  options.sigma0 = config.sigma0.value_or(config.box / 2.0);
  options.m0 = config.m0;
  options.optimizer.pair_count = config.pair_count;
  options.optimizer.curvature = {config.kappa, config.eta_a};
  options.stop_fitness_std = config.stop_fitness_std;
  options.restarts = config.ipop;
  const MeanSampler sampler = uniform_box_sampler(config.dim, -config.box, config.box);

  for (std::size_t k = 0; k < config.runs; ++k) {
    const std::uint64_t seed = config.seed + k;
    Rng rng(seed);
    Trace trace;
    const Observer observer = [&](const OptimizerState& state, const GenerationRecord& rec) {
      double distance = std::numeric_limits<double>::quiet_NaN();
      if (problem.x_star) {
        Vector diff = state.mean;
        axpy(-1.0, *problem.x_star, diff);
        distance = norm(diff);
      }
      trace.push_back({rec, distance});
    };
    const RunResult run = ipop_run(problem.evaluate, config.dim, config.budget, stop_target,
                                   sampler, options, rng, observer);

    RunSummary summary;
    summary.run = k;
    summary.seed = seed;
    summary.termination = run.termination;
    summary.evals_used = run.evals_used;
    summary.best_f = run.best_f;
    summary.restarts = run.restart_count;
    summary.generations = trace.size();
    summary.hits = evals_to_targets(trace, config.targets, problem.f_star);
    result.summaries.push_back(std::move(summary));
    result.traces.push_back(std::move(trace));
  }

  if (!config.out.empty()) {
    std::filesystem::create_directories(config.out);
    for (std::size_t k = 0; k < result.traces.size(); ++k)
      write_trace_csv(config.out / trace_file_name(k), result.traces[k]);
    write_summary_json(config.out / "summary.json", config, result);
  }
  return result;
}

Vector log_budget_grid(std::size_t budget, std::size_t per_decade) {
  if (budget == 0 || per_decade == 0) throw ConfigError("budget grid needs a positive budget");
  Vector grid;
  const double top = std::log10(static_cast<double>(budget));
  const auto steps = static_cast<std::size_t>(std::floor(top * static_cast<double>(per_decade)));
  for (std::size_t i = 0; i <= steps; ++i)
    grid.push_back(std::pow(10.0, static_cast<double>(i) / static_cast<double>(per_decade)));
  if (grid.back() < static_cast<double>(budget)) grid.push_back(static_cast<double>(budget));
  return grid;
}

EcdfCurve compute_ecdf(std::span<const RunSummary> summaries,
                       std::span<const double> targets, std::span<const double> budget_grid) {
  if (summaries.empty()) throw ConfigError("compute_ecdf: no runs");
  if (targets.empty()) throw ConfigError("compute_ecdf: no targets");

  std::vector<double> solved_at;  // +inf for unsolved pairs
  for (const auto& s : summaries) {
    for (double target : targets) {
      double evals = std::numeric_limits<double>::infinity();
      for (const auto& hit : s.hits) {
        if (hit.target == target && hit.evals) evals = static_cast<double>(*hit.evals);
      }
      solved_at.push_back(evals);
    }
  }
  std::sort(solved_at.begin(), solved_at.end());

  EcdfCurve curve;
  const double total = static_cast<double>(solved_at.size());
  for (double b : budget_grid) {
    const auto count = std::upper_bound(solved_at.begin(), solved_at.end(), b) - solved_at.begin();
    curve.budgets.push_back(b);
    curve.fractions.push_back(static_cast<double>(count) / total);
  }
  return curve;
}

TraceField parse_trace_field(std::string_view name) {
  if (name == "distance") return TraceField::distance;
  if (name == "cond_C" || name == "cond_c") return TraceField::cond_c;
  if (name == "sigma") return TraceField::sigma;
  if (name == "best_f") return TraceField::best_f;
  throw ConfigError("unknown field: " + std::string(name));
}

double median(Vector values) {
  if (values.empty()) throw ConfigError("median of an empty set");
  const std::size_t n = values.size();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

Vector median_trajectory(std::span<const Trace> traces, TraceField field) {
  if (traces.empty()) throw ConfigError("median_trajectory: no traces");
  std::size_t length = traces.front().size();
  for (const auto& t : traces) length = std::min(length, t.size());

  auto pick = [field](const TraceRow& row) {
    switch (field) {
      case TraceField::distance:
        return row.distance;
      case TraceField::cond_c:
        return row.record.cond_c;
      case TraceField::sigma:
        return row.record.sigma;
      case TraceField::best_f:
        return row.record.best_f;
    }
    return std::numeric_limits<double>::quiet_NaN();
  };

  Vector medians(length);
  Vector column(traces.size());
  for (std::size_t g = 0; g < length; ++g) {
    for (std::size_t r = 0; r < traces.size(); ++r) column[r] = pick(traces[r][g]);
    medians[g] = median(column);
  }
  return medians;
}

}  // namespace hees
