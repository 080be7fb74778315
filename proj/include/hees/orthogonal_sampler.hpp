#pragma once

// Random blocks of mutually orthogonal directions whose lengths are those of
// independent standard normal vectors.

#include <cstddef>
#include <optional>
#include <span>

#include "hees/linalg.hpp"
#include "hees/random.hpp"

namespace hees {

// Directions for one generation. Slot s lives in block s / dim at position
// s % dim and is stored as row s of `vectors`. Slots 0 .. pair_count-1 are
// the used ones; the trailing slots of the final block are kept so that the
// update factor can apply a neutral update along them.
struct DirectionSet {
  std::size_t dim = 0;
  std::size_t pair_count = 0;
  std::size_t block_count = 0;
  Matrix vectors;  // (block_count * dim) x dim
  Vector norms;    // length of each row, equal to the raw Gaussian draw

  std::size_t slot_count() const { return block_count * dim; }
  bool used(std::size_t slot) const { return slot < pair_count; }
  std::span<const double> direction(std::size_t slot) const { return vectors.row(slot); }
  std::size_t used_in_final_block() const { return pair_count - (block_count - 1) * dim; }
};

std::size_t block_count_for(std::size_t dim, std::size_t pair_count);

// Modified Gram-Schmidt (two sweeps) on the rows of `raw`, each result
// rescaled to the norm of its raw row. Returns nullopt if a raw row is
// numerically zero or its orthogonal residual falls below 1e-12 of its norm.
std::optional<Matrix> orthogonalize_rows(const Matrix& raw);

// dim x dim matrix whose rows are pairwise orthogonal with chi(dim)
// distributed lengths and a uniformly random orientation. Degenerate draws
// are discarded and the whole block is redrawn.
Matrix sample_orthogonal(std::size_t dim, Rng& rng);

DirectionSet sample_direction_blocks(std::size_t dim, std::size_t pair_count, Rng& rng);

// Haar-distributed orthogonal matrix (rows of a normalized sample_orthogonal
// block).
Matrix random_rotation(std::size_t dim, Rng& rng);

}  // namespace hees
