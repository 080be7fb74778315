#pragma once

// Benchmark objectives: convex quadratics, Rosenbrock, Rastrigin and the
// monotone transformations of the sphere (log-sphere, rugged sphere).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hees/linalg.hpp"
#include "hees/optimizer.hpp"

namespace hees {

using Gradient = std::function<Vector(std::span<const double>)>;

// f_inst(x) = f(R (x - shift)), both drawn from `seed`.
struct Instance {
  std::uint64_t seed = 0;
  Vector shift;
  Matrix rotation;
};

struct Problem {
  std::string name;
  std::size_t dim = 0;
  Objective evaluate;
  Gradient gradient;  // empty when not coded
  std::optional<Vector> x_star;
  std::optional<double> f_star;
  std::optional<Instance> instance;

  double operator()(std::span<const double> x) const { return evaluate(x); }
};

// f(x) = 1/2 (x - x*)^T H (x - x*). Throws ConfigError unless H is
// symmetric positive definite.
Problem make_quadratic(Matrix h, Vector x_star, std::string name = "quadratic");

Problem sphere(std::size_t dim);
// H_ii = 10^(6 (i-1) / (d-1))
Problem ellipsoid(std::size_t dim);
// H = diag(1e6, 1, ..., 1)
Problem discus(std::size_t dim);
// H = diag(1, 1e6, ..., 1e6)
Problem cigar(std::size_t dim);

Problem rosenbrock(std::size_t dim);
Problem rastrigin(std::size_t dim);

// log(|x|^2 / 2); returns the lowest finite double at the optimum.
Problem log_sphere(std::size_t dim);

// h(t) = exp([1/4 - 1/2 cos(pi (5 log t - r(t))) + r(t)] / 5),
// r(t) = floor(5 log t). Throws std::domain_error for t < 0 and returns 0
// at t = 0.
double rugged_transform(double t);
Problem rugged_sphere(std::size_t dim);

// Rotation and shift drawn from `seed`; seed 0 returns the problem as is.
// The shift is uniform in [-3, 3]^d, the rotation Haar distributed.
Problem with_instance(Problem base, std::uint64_t seed);

// Same as above with a caller-supplied rotation and zero shift.
Problem rotated(Problem base, Matrix rotation);

const std::vector<std::string>& problem_names();

// Registry lookup by name. Throws ConfigError for unknown names or
// unsupported dimensions.
Problem make_problem(std::string_view name, std::size_t dim, std::uint64_t instance_seed = 0);

}  // namespace hees
