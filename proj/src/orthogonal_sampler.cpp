#include "hees/orthogonal_sampler.hpp"

#include <algorithm>
#include <cmath>

#include "hees/errors.hpp"

namespace hees {
namespace {

constexpr double kResidualFloor = 1e-12;

}  // namespace

std::size_t block_count_for(std::size_t dim, std::size_t pair_count) {
  if (dim == 0 || pair_count == 0) throw ConfigError("dimension and pair count must be positive");
  return (pair_count + dim - 1) / dim;
}

std::optional<Matrix> orthogonalize_rows(const Matrix& raw) {
  const std::size_t count = raw.rows();
  Matrix out = raw;
  for (std::size_t i = 0; i < count; ++i) {
    const double length = norm(raw.row(i));
    if (!(length > 0.0) || !std::isfinite(length)) return std::nullopt;

    auto v = out.row(i);
    // Second sweep restores orthogonality lost to cancellation in the first.
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (std::size_t k = 0; k < i; ++k) {
        const auto u = out.row(k);  // already unit length
        axpy(-dot(v, u), u, v);
      }
    }
    const double residual = norm(v);
    if (!(residual >= kResidualFloor * length)) return std::nullopt;
    for (double& x : v) x /= residual;
  }
  for (std::size_t i = 0; i < count; ++i) {
    const double length = norm(raw.row(i));
    for (double& x : out.row(i)) x *= length;
  }
  return out;
}

Matrix sample_orthogonal(std::size_t dim, Rng& rng) {
  if (dim == 0) throw ConfigError("sample_orthogonal: dimension must be positive");
  Matrix raw(dim, dim);
  for (;;) {
    fill_standard_normal(rng, raw.values());
    if (auto frame = orthogonalize_rows(raw)) return *std::move(frame);
  }
}

DirectionSet sample_direction_blocks(std::size_t dim, std::size_t pair_count, Rng& rng) {
  DirectionSet set;
  set.dim = dim;
  set.pair_count = pair_count;
  set.block_count = block_count_for(dim, pair_count);
  set.vectors = Matrix(set.slot_count(), dim);
  set.norms.resize(set.slot_count());
  for (std::size_t b = 0; b < set.block_count; ++b) {
    const Matrix block = sample_orthogonal(dim, rng);
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t slot = b * dim + j;
      auto dst = set.vectors.row(slot);
      auto src = block.row(j);
      std::copy(src.begin(), src.end(), dst.begin());
      set.norms[slot] = norm(src);
    }
  }
  return set;
}

Matrix random_rotation(std::size_t dim, Rng& rng) {
  Matrix frame = sample_orthogonal(dim, rng);
  for (std::size_t i = 0; i < dim; ++i) {
    auto r = frame.row(i);
    const double length = norm(r);
    for (double& x : r) x /= length;
  }
  return frame;
}

}  // namespace hees
