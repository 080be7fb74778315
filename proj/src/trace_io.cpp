#include <charconv>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hees/errors.hpp"
#include "hees/harness.hpp"

namespace hees {
namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

double parse_double(std::string_view field) {
  // strtod handles inf/nan spellings written by %.17g.
  std::string tmp(field);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (end == tmp.c_str()) throw ConfigError("malformed number in trace: " + tmp);
  return v;
}

std::size_t parse_size(std::string_view field) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ConfigError("malformed integer in trace: " + std::string(field));
  return v;
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string trace_file_name(std::size_t run) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "run_%03zu.csv", run);
  return buf;
}

void write_trace_csv(const std::filesystem::path& path, const Trace& trace) {
  auto out = open_for_write(path);
  out << kTraceHeader << '\n';
  for (const auto& row : trace) {
    const auto& r = row.record;
    out << r.restart_index << ',' << r.generation << ',' << r.evals << ',' << r.pair_count << ','
        << format_double(r.f_m) << ',' << format_double(r.best_f) << ','
        << format_double(r.best_f_so_far) << ',' << format_double(r.sigma) << ','
        << format_double(r.cond_c) << ',' << format_double(r.fitness_std) << ','
        << format_double(r.log_det_g) << ',' << format_double(row.distance) << '\n';
  }
}

Trace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader)
    throw ConfigError("unexpected trace header in " + path.string());
  Trace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != 12) throw ConfigError("trace row with wrong column count in " + path.string());
    TraceRow row;
    auto& r = row.record;
    r.restart_index = parse_size(f[0]);
    r.generation = parse_size(f[1]);
    r.evals = parse_size(f[2]);
    r.pair_count = parse_size(f[3]);
    r.f_m = parse_double(f[4]);
    r.best_f = parse_double(f[5]);
    r.best_f_so_far = parse_double(f[6]);
    r.sigma = parse_double(f[7]);
    r.cond_c = parse_double(f[8]);
    r.fitness_std = parse_double(f[9]);
    r.log_det_g = parse_double(f[10]);
    row.distance = parse_double(f[11]);
    trace.push_back(row);
  }
  return trace;
}

void write_summary_json(const std::filesystem::path& path, const ExperimentConfig& config,
                        const ExperimentResult& result) {
  json doc;
  doc["function"] = config.function;
  doc["dim"] = config.dim;
  doc["budget"] = config.budget;
  doc["runs"] = config.runs;
  doc["seed"] = config.seed;
  doc["instance"] = config.instance;
  doc["targets"] = config.targets;
  doc["f_star"] = result.f_star ? json(*result.f_star) : json(nullptr);
  doc["ipop"] = config.ipop;
  doc["kappa"] = config.kappa;
  doc["eta_a"] = config.eta_a;
  doc["sigma0"] = config.sigma0 ? json(*config.sigma0) : json(nullptr);
  doc["m0"] = config.m0 ? json(*config.m0) : json(nullptr);
  doc["lambda_pairs"] = config.pair_count ? json(*config.pair_count) : json(nullptr);

  json runs = json::array();
  for (std::size_t k = 0; k < result.summaries.size(); ++k) {
    const auto& s = result.summaries[k];
    json hits = json::array();
    for (const auto& h : s.hits) hits.push_back(h.evals ? json(*h.evals) : json(nullptr));
    runs.push_back({{"run", s.run},
                    {"seed", s.seed},
                    {"trace", trace_file_name(k)},
                    {"termination", std::string(to_string(s.termination))},
                    {"evals_used", s.evals_used},
                    {"best_f", nullable(s.best_f)},
                    {"restarts", s.restarts},
                    {"generations", s.generations},
                    {"evals_to_target", hits}});
  }
  doc["results"] = runs;

  auto out = open_for_write(path);
  out << doc.dump(2) << '\n';
}

LoadedExperiment load_experiment(const std::filesystem::path& dir) {
  const auto summary_path = dir / "summary.json";
  std::ifstream in(summary_path);
  if (!in) throw ConfigError("cannot read " + summary_path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed " + summary_path.string() + ": " + e.what());
  }

  LoadedExperiment loaded;
  loaded.budget = doc.at("budget").get<std::size_t>();
  if (!doc.at("f_star").is_null()) loaded.f_star = doc.at("f_star").get<double>();
  const auto targets = doc.at("targets").get<std::vector<double>>();
  for (const auto& entry : doc.at("results")) {
    RunSummary s;
    s.run = entry.at("run").get<std::size_t>();
    s.seed = entry.at("seed").get<std::uint64_t>();
    const auto term = entry.at("termination").get<std::string>();
    for (auto t : {Termination::target_hit, Termination::budget_exhausted, Termination::converged,
                   Termination::numerical_failure}) {
      if (to_string(t) == term) s.termination = t;
    }
    s.evals_used = entry.at("evals_used").get<std::size_t>();
    s.best_f = entry.at("best_f").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                             : entry.at("best_f").get<double>();
    s.restarts = entry.at("restarts").get<std::size_t>();
    s.generations = entry.at("generations").get<std::size_t>();
    const auto& hits = entry.at("evals_to_target");
    for (std::size_t i = 0; i < targets.size() && i < hits.size(); ++i) {
      TargetHit h{targets[i], std::nullopt};
      if (!hits[i].is_null()) h.evals = hits[i].get<std::size_t>();
      s.hits.push_back(h);
    }
    loaded.traces.push_back(read_trace_csv(dir / entry.at("trace").get<std::string>()));
    loaded.summaries.push_back(std::move(s));
  }
  return loaded;
}

}  // namespace hees
