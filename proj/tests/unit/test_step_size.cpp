#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "hees/errors.hpp"
#include "hees/log.hpp"
#include "hees/orthogonal_sampler.hpp"
#include "hees/step_size.hpp"

using namespace hees;

namespace {

// Independent Monte Carlo estimate of E|sum_k (w+_k - w-_k) b_k|^2 with the
// weights dealt to the mirrored pairs by a uniformly random permutation.
double mirrored_length_oracle(std::size_t pairs, std::size_t dim, const Vector& w,
                              std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> perm(w.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double total = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto dirs = sample_direction_blocks(dim, pairs, rng);
    std::shuffle(perm.begin(), perm.end(), rng);
    Vector sum(dim, 0.0);
    for (std::size_t k = 0; k < pairs; ++k) {
      const double c = w[perm[2 * k]] - w[perm[2 * k + 1]];
      axpy(c, dirs.direction(k), sum);
    }
    total += squared_norm(sum);
  }
  return total / static_cast<double>(trials);
}

// Runs CSA under random selection and returns the per-generation changes of
// log sigma.
Vector random_selection_log_steps(std::size_t dim, std::size_t pairs, std::size_t generations,
                                  std::uint64_t seed) {
  const auto weights = RecombinationWeights::cma_default(pairs);
  const auto params = CsaParams::defaults(dim, weights);
  Rng rng(seed);
  std::vector<std::size_t> perm(2 * pairs);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Vector path(dim, 0.0);
  double gs = 0.0;
  double sigma = 1.0;
  Vector steps;
  for (std::size_t g = 0; g < generations; ++g) {
    const auto dirs = sample_direction_blocks(dim, pairs, rng);
    std::shuffle(perm.begin(), perm.end(), rng);
    Vector sum(dim, 0.0);
    for (std::size_t k = 0; k < pairs; ++k)
      axpy(weights[perm[2 * k]] - weights[perm[2 * k + 1]], dirs.direction(k), sum);
    gs = update_gs(gs, params.c_s);
    path = update_path(path, params.c_s, weights.mu_eff_mirrored(), sum);
    const double next = update_sigma(sigma, path, gs, params).sigma;
    steps.push_back(std::log(next / sigma));
    sigma = next;
  }
  return steps;
}

double median_of(Vector v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

}  // namespace

TEST_CASE("mu_eff") {
  CHECK(mu_eff(Vector{1, 0, 0, 0}) == 1.0);
  CHECK(mu_eff(Vector{0.25, 0.25, 0.25, 0.25}) == doctest::Approx(4.0));
  CHECK(mu_eff(Vector{0.8040, 0.1960, 0, 0}) == doctest::Approx(1.4602121396).epsilon(1e-9));
}

TEST_CASE("mu_eff_mirrored") {
  CHECK(mu_eff_mirrored(1.0, 1) == 1.0);
  CHECK(mu_eff_mirrored(1.0, 7) == 1.0);
  CHECK(mu_eff_mirrored(1.4602121396, 2) == doctest::Approx(1.7248040623).epsilon(1e-9));
  CHECK_THROWS_AS(mu_eff_mirrored(4.0, 2), ConfigError);

  // Strictly increasing in mu_eff, and approaches mu_eff for many pairs.
  double prev = 0.0;
  for (double m = 1.0; m < 7.5; m += 0.5) {
    const double v = mu_eff_mirrored(m, 4);
    CHECK(v > prev);
    CHECK(v >= m);
    prev = v;
  }
  CHECK(mu_eff_mirrored(3.0, 100000) == doctest::Approx(3.0).epsilon(1e-4));
}

TEST_CASE("default recombination weights") {
  const auto w = RecombinationWeights::cma_default(2);
  REQUIRE(w.values().size() == 4);
  CHECK(w[0] == doctest::Approx(0.80416285993).epsilon(1e-10));
  CHECK(w[1] == doctest::Approx(0.19583714007).epsilon(1e-10));
  CHECK(w[2] == 0.0);
  CHECK(w[3] == 0.0);
  CHECK(w.mu_eff() == doctest::Approx(1.45978988885).epsilon(1e-10));
  CHECK(w.mu_eff_mirrored() == doctest::Approx(1.72401867363).epsilon(1e-10));

  for (std::size_t pairs : {1u, 2u, 5u, 13u, 40u}) {
    const auto v = RecombinationWeights::cma_default(pairs);
    const auto vals = v.values();
    CHECK(std::accumulate(vals.begin(), vals.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::is_sorted(vals.begin(), vals.end(), std::greater<>()));
    CHECK(v.mu_eff_mirrored() >= v.mu_eff());
  }

  CHECK_THROWS_AS(RecombinationWeights::from_values({0.25, 0.25, 0.25, 0.25}, 2), ConfigError);
  CHECK_THROWS_AS(RecombinationWeights::from_values({0.5, 0.5}, 2), ConfigError);
  CHECK_THROWS_AS(RecombinationWeights::from_values({0.1, 0.9, 0, 0}, 2), ConfigError);
  CHECK_THROWS_AS(RecombinationWeights::from_values({0.9, 0.2, -0.1, 0}, 2), ConfigError);
  CHECK_NOTHROW(RecombinationWeights::from_values({0.7, 0.3, 0, 0}, 2));
}

TEST_CASE("CSA constants for the d = 10 default") {
  const auto w = RecombinationWeights::cma_default(5);
  const auto p = CsaParams::defaults(10, w);
  CHECK(p.c_s == doctest::Approx((w.mu_eff() + 2) / (10 + w.mu_eff() + 5)));
  CHECK(p.d_s == doctest::Approx(1.0 + p.c_s));  // sqrt((mu-1)/11) < 1
  CHECK(p.chi_d == doctest::Approx(3.0847265651690123).epsilon(1e-14));
}

TEST_CASE("chi_d") {
  CHECK(chi_d(1) == doctest::Approx(0.7976190476).epsilon(1e-9));
  CHECK(std::abs(chi_d(1) - std::sqrt(2.0 / std::numbers::pi)) < 0.005 * chi_d(1));
  CHECK(chi_d(10) == doctest::Approx(3.0847265652).epsilon(1e-9));
  CHECK(chi_d(1000000) / std::sqrt(1e6) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("update_path") {
  CHECK(update_path(Vector(3, 0.0), 0.3, 2.0, Vector(3, 0.0)) == Vector(3, 0.0));
  const Vector sum{1.0, -2.0};
  const Vector memoryless = update_path(Vector{5.0, 5.0}, 1.0, 2.25, sum);
  CHECK(memoryless[0] == doctest::Approx(1.5));
  CHECK(memoryless[1] == doctest::Approx(-3.0));
}

TEST_CASE("update_gs") {
  CHECK(update_gs(0.0, 0.5) == doctest::Approx(0.75));
  for (double c : {0.01, 0.3, 0.9}) CHECK(update_gs(1.0, c) == doctest::Approx(1.0).epsilon(1e-15));

  const double c = 0.2836;
  double gs = 0.0;
  double prev = -1.0;
  for (int t = 1; t <= 200; ++t) {
    gs = update_gs(gs, c);
    CHECK(std::abs(gs - (1.0 - std::pow(1.0 - c, 2.0 * t))) < 1e-12);
    CHECK(gs >= prev);
    prev = gs;
  }
}

TEST_CASE("update_sigma") {
  const CsaParams p{0.3, 1.3, 3.0};
  const Vector on_target{3.0 * std::sqrt(0.64), 0.0};
  CHECK(update_sigma(2.0, on_target, 0.64, p).sigma == doctest::Approx(2.0).epsilon(1e-15));

  const auto shrink = update_sigma(2.0, Vector{0.0, 0.0}, 1.0, p);
  CHECK(shrink.sigma == doctest::Approx(2.0 * std::exp(-0.3 / 1.3)));
  CHECK_FALSE(shrink.capped);

  int warnings = 0;
  auto previous = set_warning_sink([&](std::string_view) { ++warnings; });
  const auto big = update_sigma(1.0, Vector{300.0, 0.0}, 1.0, p);
  set_warning_sink(previous);
  CHECK(big.capped);
  CHECK(big.sigma == doctest::Approx(std::exp(1.0)));
  CHECK(warnings == 1);
}

TEST_CASE("mu_eff_mirrored matches the Monte Carlo path length") {
  for (auto [pairs, dim] : {std::pair<std::size_t, std::size_t>{2, 5}, {5, 10}, {3, 2}}) {
    CAPTURE(pairs);
    CAPTURE(dim);
    const auto w = RecombinationWeights::cma_default(pairs);
    const Vector vals(w.values().begin(), w.values().end());
    const double mc = mirrored_length_oracle(pairs, dim, vals, 40000, 17 + pairs);
    CHECK(mc * w.mu_eff_mirrored() == doctest::Approx(static_cast<double>(dim)).epsilon(0.02));
  }
}

TEST_CASE("stationary path length under random selection") {
  const std::size_t dim = 10, pairs = 5;
  const auto weights = RecombinationWeights::cma_default(pairs);
  const auto params = CsaParams::defaults(dim, weights);
  Rng rng(555);
  std::vector<std::size_t> perm(2 * pairs);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Vector path(dim, 0.0);
  double acc = 0.0;
  std::size_t counted = 0;
  for (std::size_t g = 0; g < 100000; ++g) {
    const auto dirs = sample_direction_blocks(dim, pairs, rng);
    std::shuffle(perm.begin(), perm.end(), rng);
    Vector sum(dim, 0.0);
    for (std::size_t k = 0; k < pairs; ++k)
      axpy(weights[perm[2 * k]] - weights[perm[2 * k + 1]], dirs.direction(k), sum);
    path = update_path(path, params.c_s, weights.mu_eff_mirrored(), sum);
    if (g >= 100) {
      acc += squared_norm(path);
      ++counted;
    }
  }
  CHECK(acc / static_cast<double>(counted) == doctest::Approx(10.0).epsilon(0.03));
}

TEST_CASE("step size is unbiased under random selection") {
  const Vector steps = random_selection_log_steps(10, 5, 10000, 99);
  CHECK(std::abs(median_of(steps)) <= 0.005);
}

TEST_CASE("no systematic step-size drift over 1000 random-selection generations") {
  // log(sigma_T / sigma_0) spreads by about 3 across runs, so the bound is
  // on the mean drift per generation.
  constexpr std::size_t runs = 300, generations = 1000;
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < runs; ++seed) {
    const Vector steps = random_selection_log_steps(10, 5, generations, 5000 + seed);
    total += std::accumulate(steps.begin(), steps.end(), 0.0);
  }
  const double per_generation = total / static_cast<double>(runs * generations);
  CHECK(std::abs(per_generation) < 1e-3);
}
