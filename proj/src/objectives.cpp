#include "hees/objectives.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hees/errors.hpp"
#include "hees/orthogonal_sampler.hpp"

namespace hees {
namespace {

void require_dim(std::size_t dim, std::size_t min, std::string_view name) {
  if (dim < min)
    throw ConfigError(std::string(name) + " requires dimension >= " + std::to_string(min));
}

bool is_spd(const Matrix& h) {
  if (!h.square() || h.rows() == 0) return false;
  const std::size_t n = h.rows();
  Eigen::MatrixXd m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!std::isfinite(h(r, c))) return false;
      if (std::abs(h(r, c) - h(c, r)) > 1e-12 * (std::abs(h(r, c)) + std::abs(h(c, r))))
        return false;
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = h(r, c);
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  return llt.info() == Eigen::Success;
}

double half_squared_norm(std::span<const double> x) { return 0.5 * squared_norm(x); }

Problem diagonal_quadratic(std::string name, Vector diag) {
  const std::size_t d = diag.size();
  return make_quadratic(Matrix::diagonal(diag), Vector(d, 0.0), std::move(name));
}

}  // namespace

Problem make_quadratic(Matrix h, Vector x_star, std::string name) {
  if (!is_spd(h)) throw ConfigError("make_quadratic: H must be symmetric positive definite");
  if (x_star.size() != h.rows()) throw ConfigError("make_quadratic: x_star has wrong size");
  Problem p;
  p.name = std::move(name);
  p.dim = h.rows();
  p.x_star = x_star;
  p.f_star = 0.0;
  p.evaluate = [h, x_star](std::span<const double> x) {
    Vector diff(x.begin(), x.end());
    axpy(-1.0, x_star, diff);
    return 0.5 * dot(diff, multiply(h, diff));
  };
  p.gradient = [h, x_star](std::span<const double> x) {
    Vector diff(x.begin(), x.end());
    axpy(-1.0, x_star, diff);
    return multiply(h, diff);
  };
  return p;
}

Problem sphere(std::size_t dim) {
  require_dim(dim, 1, "sphere");
  Problem p;
  p.name = "sphere";
  p.dim = dim;
  p.x_star = Vector(dim, 0.0);
  p.f_star = 0.0;
  p.evaluate = half_squared_norm;
  p.gradient = [](std::span<const double> x) { return Vector(x.begin(), x.end()); };
  return p;
}

Problem ellipsoid(std::size_t dim) {
  require_dim(dim, 1, "ellipsoid");
  Vector diag(dim, 1.0);
  for (std::size_t i = 0; i < dim && dim > 1; ++i)
    diag[i] = std::pow(10.0, 6.0 * static_cast<double>(i) / static_cast<double>(dim - 1));
  return diagonal_quadratic("ellipsoid", std::move(diag));
}

Problem discus(std::size_t dim) {
  require_dim(dim, 1, "discus");
  Vector diag(dim, 1.0);
  diag[0] = 1e6;
  return diagonal_quadratic("discus", std::move(diag));
}

Problem cigar(std::size_t dim) {
  require_dim(dim, 1, "cigar");
  Vector diag(dim, 1e6);
  diag[0] = 1.0;
  return diagonal_quadratic("cigar", std::move(diag));
}

Problem rosenbrock(std::size_t dim) {
  require_dim(dim, 2, "rosenbrock");
  Problem p;
  p.name = "rosenbrock";
  p.dim = dim;
  p.x_star = Vector(dim, 1.0);
  p.f_star = 0.0;
  p.evaluate = [](std::span<const double> x) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double a = x[i + 1] - x[i] * x[i];
      const double b = 1.0 - x[i];
      sum += 100.0 * a * a + b * b;
    }
    return sum;
  };
  p.gradient = [](std::span<const double> x) {
    Vector g(x.size(), 0.0);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double a = x[i + 1] - x[i] * x[i];
      g[i] += -400.0 * x[i] * a - 2.0 * (1.0 - x[i]);
      g[i + 1] += 200.0 * a;
    }
    return g;
  };
  return p;
}

Problem rastrigin(std::size_t dim) {
  require_dim(dim, 1, "rastrigin");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  Problem p;
  p.name = "rastrigin";
  p.dim = dim;
  p.x_star = Vector(dim, 0.0);
  p.f_star = 0.0;
  p.evaluate = [](std::span<const double> x) {
    double sum = 10.0 * static_cast<double>(x.size());
    for (double v : x) sum += v * v - 10.0 * std::cos(two_pi * v);
    return sum;
  };
  p.gradient = [](std::span<const double> x) {
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      g[i] = 2.0 * x[i] + 10.0 * two_pi * std::sin(two_pi * x[i]);
    return g;
  };
  return p;
}

Problem log_sphere(std::size_t dim) {
  require_dim(dim, 1, "log_sphere");
  Problem p;
  p.name = "log_sphere";
  p.dim = dim;
  p.x_star = Vector(dim, 0.0);
  p.evaluate = [](std::span<const double> x) {
    const double t = half_squared_norm(x);
    if (!(t > 0.0)) return std::numeric_limits<double>::lowest();
    return std::log(t);
  };
  p.gradient = [](std::span<const double> x) {
    const double t = half_squared_norm(x);
    Vector g(x.begin(), x.end());
    for (double& v : g) v /= t;
    return g;
  };
  return p;
}

double rugged_transform(double t) {
  if (t < 0.0 || std::isnan(t)) throw std::domain_error("rugged_transform: t must be >= 0");
  if (t == 0.0) return 0.0;
  const double u = 5.0 * std::log(t);
  const double r = std::floor(u);
  return std::exp((0.25 - 0.5 * std::cos(std::numbers::pi * (u - r)) + r) / 5.0);
}

Problem rugged_sphere(std::size_t dim) {
  require_dim(dim, 1, "rugged_sphere");
  Problem p;
  p.name = "rugged_sphere";
  p.dim = dim;
  p.x_star = Vector(dim, 0.0);
  p.f_star = 0.0;
  p.evaluate = [](std::span<const double> x) {
    return rugged_transform(half_squared_norm(x));
  };
  return p;
}

Problem rotated(Problem base, Matrix rotation) {
  if (rotation.rows() != base.dim || rotation.cols() != base.dim)
    throw ConfigError("rotation must be d x d");
  Instance inst;
  inst.shift.assign(base.dim, 0.0);
  inst.rotation = std::move(rotation);

  Problem p = base;
  const Matrix r = inst.rotation;
  const Matrix rt = transpose(r);
  p.evaluate = [f = base.evaluate, r](std::span<const double> x) {
    return f(multiply(r, x));
  };
  if (base.gradient) {
    p.gradient = [g = base.gradient, r, rt](std::span<const double> x) {
      return multiply(rt, g(multiply(r, x)));
    };
  }
  if (base.x_star) p.x_star = multiply(rt, *base.x_star);
  p.instance = std::move(inst);
  return p;
}

Problem with_instance(Problem base, std::uint64_t seed) {
  if (seed == 0) return base;
  Rng rng(seed);
  Instance inst;
  inst.seed = seed;
  inst.rotation = random_rotation(base.dim, rng);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  inst.shift.resize(base.dim);
  for (double& v : inst.shift) v = u(rng);

  Problem p = base;
  const Matrix r = inst.rotation;
  const Matrix rt = transpose(r);
  const Vector shift = inst.shift;
  auto to_base = [r, shift](std::span<const double> x) {
    Vector z(x.begin(), x.end());
    axpy(-1.0, shift, z);
    return multiply(r, z);
  };
  p.evaluate = [f = base.evaluate, to_base](std::span<const double> x) {
    return f(to_base(x));
  };
  if (base.gradient) {
    p.gradient = [g = base.gradient, to_base, rt](std::span<const double> x) {
      return multiply(rt, g(to_base(x)));
    };
  }
  if (base.x_star) {
    Vector x = multiply(rt, *base.x_star);
    axpy(1.0, shift, x);
    p.x_star = std::move(x);
  }
  p.instance = std::move(inst);
  return p;
}

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {
      "sphere", "ellipsoid", "discus", "cigar", "rosenbrock", "rastrigin", "log_sphere",
      "rugged_sphere"};
  return names;
}

Problem make_problem(std::string_view name, std::size_t dim, std::uint64_t instance_seed) {
  Problem base;
  if (name == "sphere") {
    base = sphere(dim);
  } else if (name == "ellipsoid") {
    base = ellipsoid(dim);
  } else if (name == "discus") {
    base = discus(dim);
  } else if (name == "cigar") {
    base = cigar(dim);
  } else if (name == "rosenbrock") {
    base = rosenbrock(dim);
  } else if (name == "rastrigin") {
    base = rastrigin(dim);
  } else if (name == "log_sphere") {
    base = log_sphere(dim);
  } else if (name == "rugged_sphere") {
    base = rugged_sphere(dim);
  } else {
    throw ConfigError("unknown function: " + std::string(name));
  }
  return with_instance(std::move(base), instance_seed);
}

}  // namespace hees
