#pragma once

// Experiment runner and aggregation: seeded repeated runs, per-generation
// traces, evaluations-to-target summaries, ECDF curves and median
// trajectories.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hees/linalg.hpp"
#include "hees/optimizer.hpp"

namespace hees {

struct ExperimentConfig {
  std::string function = "sphere";
  std::size_t dim = 10;
  std::size_t budget = 10000;
  // Precisions f - f* when f* is known, absolute f values otherwise. Sorted
  // descending; the last one is the stopping target.
  std::vector<double> targets = {1e-8};
  std::size_t runs = 1;
  std::uint64_t seed = 1;            // run k uses seed + k
  std::uint64_t instance = 0;        // 0 = canonical, untransformed problem
  std::optional<double> sigma0;      // defaults to half the restart box width
  std::optional<Vector> m0;          // drawn from the restart box when unset
  std::optional<std::size_t> pair_count;
  double kappa = 3.0;
  double eta_a = 0.5;
  bool ipop = false;
  double box = 4.0;                  // restart box is [-box, box]^d
  double stop_fitness_std = 1e-9;
  std::filesystem::path out;         // no files written when empty
  std::string format = "csv";

  // Throws ConfigError.
  void validate() const;
};

struct TraceRow {
  GenerationRecord record;
  double distance = 0.0;  // |m - x*| after the generation, NaN if x* unknown
};

using Trace = std::vector<TraceRow>;

struct TargetHit {
  double target = 0.0;
  std::optional<std::size_t> evals;  // first evaluation count reaching it
};

struct RunSummary {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  Termination termination = Termination::budget_exhausted;
  std::size_t evals_used = 0;
  double best_f = 0.0;
  std::size_t restarts = 0;
  std::size_t generations = 0;
  std::vector<TargetHit> hits;
};

struct ExperimentResult {
  std::vector<RunSummary> summaries;
  std::vector<Trace> traces;
  std::optional<double> f_star;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

// Scans a trace for the first row whose best_f_so_far reaches each target.
std::vector<TargetHit> evals_to_targets(const Trace& trace, std::span<const double> targets,
                                        std::optional<double> f_star);

struct EcdfCurve {
  Vector budgets;
  Vector fractions;
};

// Log-spaced from 1 to `budget` inclusive, `per_decade` points per decade.
Vector log_budget_grid(std::size_t budget, std::size_t per_decade = 20);

// Fraction of (run, target) pairs solved within each budget. Only hits whose
// target appears in `targets` count; unreached pairs are never solved.
// Throws ConfigError on an empty summary set.
EcdfCurve compute_ecdf(std::span<const RunSummary> summaries,
                       std::span<const double> targets, std::span<const double> budget_grid);

enum class TraceField { distance, cond_c, sigma, best_f };

// Accepts "distance", "cond_C" (or "cond_c"), "sigma", "best_f".
TraceField parse_trace_field(std::string_view name);

double median(Vector values);

// Per-generation median across traces, truncated at the shortest one.
Vector median_trajectory(std::span<const Trace> traces, TraceField field);

// ---- persistence --------------------------------------------------------

inline constexpr std::string_view kTraceHeader =
    "restart,generation,evals,pair_count,f_m,best_f,best_f_so_far,sigma,cond_c,"
    "fitness_std,log_det_g,distance";

void write_trace_csv(const std::filesystem::path& path, const Trace& trace);
Trace read_trace_csv(const std::filesystem::path& path);

std::string trace_file_name(std::size_t run);

// summary.json next to the traces.
void write_summary_json(const std::filesystem::path& path, const ExperimentConfig& config,
                        const ExperimentResult& result);

struct LoadedExperiment {
  std::size_t budget = 0;
  std::optional<double> f_star;
  std::vector<RunSummary> summaries;
  std::vector<Trace> traces;
};

// Reads summary.json and every trace it lists from `dir`.
LoadedExperiment load_experiment(const std::filesystem::path& dir);

}  // namespace hees
