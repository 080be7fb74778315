// hees: run HE-ES experiments and aggregate their traces.
//
//   hees run --function sphere --dim 10 --budget 10000 --runs 3 --seed 1 \
//            --target 1e-8 --out results/sphere
//   hees ecdf --in results/sphere --targets 1,1e-2,1e-4,1e-8 --out ecdf.csv
//   hees median --in results/sphere --field cond_C --out cond.csv

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hees/errors.hpp"
#include "hees/harness.hpp"
#include "hees/kernels.hpp"

namespace {

std::vector<double> parse_csv_doubles(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0')
      throw hees::ConfigError(std::string("malformed number in ") + what + ": " + item);
    values.push_back(v);
  }
  if (values.empty()) throw hees::ConfigError(std::string(what) + " is empty");
  return values;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw hees::ConfigError("cannot write " + path);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hessian estimation evolution strategy: experiments and aggregation"};
  app.require_subcommand(1);

  std::string isa;
  app.add_option("--isa", isa, "Kernel variant (scalar, avx2, neon); default: best available");

  // run
  auto* run = app.add_subcommand("run", "Run seeded optimizations and write traces");
  hees::ExperimentConfig config;
  double target = 1e-8;
  std::string m0_csv;
  std::size_t pairs = 0;
  double sigma0 = 0.0;
  std::string out_dir;
  run->add_option("--function", config.function, "Objective name")->required();
  run->add_option("--dim", config.dim, "Dimension")->required();
  run->add_option("--budget", config.budget, "Evaluation budget per run")->required();
  run->add_option("--runs", config.runs, "Number of independent runs")->required();
  run->add_option("--seed", config.seed, "Base seed; run k uses seed + k")->required();
  run->add_option("--target", target, "Target precision f - f* (absolute f if f* unknown)")
      ->required();
  auto* sigma_opt = run->add_option("--sigma0", sigma0, "Initial step size");
  auto* m0_opt = run->add_option("--m0", m0_csv, "Initial mean, comma separated");
  auto* pairs_opt = run->add_option("--lambda-pairs", pairs, "Number of mirrored pairs");
  run->add_option("--kappa", config.kappa, "Trust-region constant");
  run->add_option("--eta-a", config.eta_a, "Matrix learning rate");
  run->add_flag("--ipop", config.ipop, "Restart with doubled population on convergence");
  run->add_option("--instance", config.instance, "Instance seed (0 = untransformed)");
  run->add_option("--stop-fitness-std", config.stop_fitness_std,
                  "Stop a run once the offspring f-value std drops below this (0 disables)");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--format", config.format, "Trace format")->check(CLI::IsMember({"csv"}));

  // ecdf
  auto* ecdf = app.add_subcommand("ecdf", "ECDF of (run, target) pairs over the budget");
  std::string ecdf_in, ecdf_targets, ecdf_out;
  ecdf->add_option("--in", ecdf_in, "Experiment directory")->required();
  ecdf->add_option("--targets", ecdf_targets, "Target precisions, comma separated")->required();
  ecdf->add_option("--out", ecdf_out, "Output CSV")->required();

  // median
  auto* med = app.add_subcommand("median", "Per-generation median of a trace field");
  std::string med_in, med_field, med_out;
  med->add_option("--in", med_in, "Experiment directory")->required();
  med->add_option("--field", med_field, "distance, cond_C, sigma or best_f")->required();
  med->add_option("--out", med_out, "Output CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!isa.empty()) {
      const auto parsed = hees::simd::parse_isa(isa);
      if (!parsed) throw hees::ConfigError("unknown kernel variant: " + isa);
      hees::simd::select(*parsed);
    }

    if (*run) {
      config.targets = {target};
      if (*sigma_opt) config.sigma0 = sigma0;
      if (*m0_opt) config.m0 = parse_csv_doubles(m0_csv, "--m0");
      if (*pairs_opt) config.pair_count = pairs;
      config.out = out_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(out_dir);
      const auto result = hees::run_experiment(config);
      std::size_t hit = 0;
      for (const auto& s : result.summaries) {
        if (s.hits.back().evals) ++hit;
        std::cout << "run " << s.run << " seed " << s.seed << ": "
                  << hees::to_string(s.termination) << ", best_f " << fmt(s.best_f) << ", evals "
                  << s.evals_used << ", restarts " << s.restarts << '\n';
      }
      std::cout << hit << "/" << result.summaries.size() << " runs reached the target\n";
    } else if (*ecdf) {
      const auto targets = parse_csv_doubles(ecdf_targets, "--targets");
      auto loaded = hees::load_experiment(ecdf_in);
      for (std::size_t k = 0; k < loaded.summaries.size(); ++k)
        loaded.summaries[k].hits = hees::evals_to_targets(loaded.traces[k], targets, loaded.f_star);
      const auto grid = hees::log_budget_grid(loaded.budget);
      const auto curve = hees::compute_ecdf(loaded.summaries, targets, grid);
      auto out = open_output(ecdf_out);
      out << "evals,fraction\n";
      for (std::size_t i = 0; i < curve.budgets.size(); ++i)
        out << fmt(curve.budgets[i]) << ',' << fmt(curve.fractions[i]) << '\n';
    } else if (*med) {
      const auto field = hees::parse_trace_field(med_field);
      const auto loaded = hees::load_experiment(med_in);
      const auto medians = hees::median_trajectory(loaded.traces, field);
      auto out = open_output(med_out);
      out << "generation," << med_field << '\n';
      for (std::size_t g = 0; g < medians.size(); ++g) out << g + 1 << ',' << fmt(medians[g]) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "hees: error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
