#include <doctest.h>

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "hees/errors.hpp"
#include "hees/orthogonal_sampler.hpp"

using namespace hees;

namespace {

double max_normalized_dot(const Matrix& frame) {
  double worst = 0.0;
  for (std::size_t i = 0; i < frame.rows(); ++i)
    for (std::size_t j = i + 1; j < frame.rows(); ++j)
      worst = std::max(worst, std::abs(dot(frame.row(i), frame.row(j))) /
                                  (norm(frame.row(i)) * norm(frame.row(j))));
  return worst;
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(Vector a, Vector b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("one-dimensional frame is the raw draw") {
  Matrix raw(1, 1);
  raw(0, 0) = -1.7;
  const auto y = orthogonalize_rows(raw);
  REQUIRE(y.has_value());
  CHECK((*y)(0, 0) == doctest::Approx(-1.7).epsilon(1e-15));
}

TEST_CASE("hand Gram-Schmidt in two dimensions") {
  Matrix raw(2, 2);
  raw(0, 0) = 3;
  raw(0, 1) = 0;
  raw(1, 0) = 4;
  raw(1, 1) = 4;
  const auto y = orthogonalize_rows(raw);
  REQUIRE(y.has_value());
  CHECK((*y)(0, 0) == doctest::Approx(3.0));
  CHECK(std::abs((*y)(0, 1)) < 1e-15);
  CHECK(std::abs((*y)(1, 0)) < 1e-14);
  CHECK((*y)(1, 1) == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("degenerate rows are rejected") {
  Matrix zero_row(2, 2);
  zero_row(0, 0) = 1.0;
  CHECK_FALSE(orthogonalize_rows(zero_row).has_value());

  Matrix parallel(2, 2);
  parallel(0, 0) = 1.0;
  parallel(0, 1) = 2.0;
  parallel(1, 0) = 2.0;
  parallel(1, 1) = 4.0;
  CHECK_FALSE(orthogonalize_rows(parallel).has_value());
}

TEST_CASE("frames are orthogonal and keep the raw lengths") {
  for (std::size_t d : {1u, 2u, 3u, 10u, 50u, 120u}) {
    CAPTURE(d);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      Rng rng(seed);
      Rng replay(seed);
      Matrix raw(d, d);
      fill_standard_normal(replay, raw.values());

      const Matrix y = sample_orthogonal(d, rng);
      CHECK(max_normalized_dot(y) < 1e-10);
      for (std::size_t i = 0; i < d; ++i) {
        const double n_raw = norm(raw.row(i));
        CHECK(std::abs(norm(y.row(i)) - n_raw) <= 1e-12 * n_raw);
      }
    }
  }
}

TEST_CASE("block layout") {
  Rng rng(3);
  {
    const auto s = sample_direction_blocks(10, 5, rng);
    CHECK(s.block_count == 1);
    CHECK(s.slot_count() == 10);
    CHECK(s.used_in_final_block() == 5);
    CHECK(s.used(4));
    CHECK_FALSE(s.used(5));
  }
  {
    const auto s = sample_direction_blocks(3, 7, rng);
    CHECK(s.block_count == 3);
    CHECK(s.slot_count() == 9);
    CHECK(s.used_in_final_block() == 1);
    CHECK(s.used(6));
    CHECK_FALSE(s.used(7));
    // Orthogonality holds within each block.
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
          CHECK(std::abs(dot(s.direction(3 * b + i), s.direction(3 * b + j))) <
                1e-10 * s.norms[3 * b + i] * s.norms[3 * b + j]);
  }
  {
    const auto s = sample_direction_blocks(2, 2, rng);
    CHECK(s.block_count == 1);
    CHECK(s.used_in_final_block() == 2);
  }
  CHECK_THROWS_AS(sample_direction_blocks(0, 2, rng), ConfigError);
  CHECK_THROWS_AS(sample_direction_blocks(2, 0, rng), ConfigError);
}

TEST_CASE("same seed, same directions") {
  Rng a(99), b(99);
  const auto s1 = sample_direction_blocks(4, 9, a);
  const auto s2 = sample_direction_blocks(4, 9, b);
  CHECK(s1.vectors == s2.vectors);
}

TEST_CASE("squared lengths follow chi^2(d)") {
  constexpr std::size_t d = 5;
  constexpr std::size_t samples = 100000;
  Rng rng(2024);
  Vector sq;
  sq.reserve(samples);
  while (sq.size() < samples) {
    const Matrix y = sample_orthogonal(d, rng);
    for (std::size_t i = 0; i < d && sq.size() < samples; ++i) sq.push_back(squared_norm(y.row(i)));
  }
  double mean = 0.0;
  for (double v : sq) mean += v;
  mean /= samples;
  CHECK(std::abs(mean - d) < 0.02 * d);

  // Pearson test over 20 equiprobable bins of chi^2(d).
  constexpr std::size_t bins = 20;
  const boost::math::chi_squared dist(static_cast<double>(d));
  Vector edges;
  for (std::size_t k = 1; k < bins; ++k)
    edges.push_back(boost::math::quantile(dist, static_cast<double>(k) / bins));
  std::vector<double> counts(bins, 0.0);
  for (double v : sq) counts[static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), v) - edges.begin())] += 1.0;
  const double expected = static_cast<double>(samples) / bins;
  double stat = 0.0;
  for (double c : counts) stat += (c - expected) * (c - expected) / expected;
  const double critical =
      boost::math::quantile(boost::math::chi_squared(static_cast<double>(bins - 1)), 0.99);
  CHECK(stat < critical);
}

TEST_CASE("orientation does not prefer any fixed axis") {
  constexpr std::size_t d = 4;
  constexpr std::size_t samples = 20000;
  Rng rng(11);
  Vector u1(d, 0.0);
  u1[0] = 1.0;
  Vector u2(d, 0.5);  // unit vector along the diagonal
  for (std::size_t slot : {std::size_t{0}, d - 1}) {
    CAPTURE(slot);
    Vector a, b;
    for (std::size_t n = 0; n < samples; ++n) {
      const Matrix y1 = sample_orthogonal(d, rng);
      const Matrix y2 = sample_orthogonal(d, rng);
      a.push_back(dot(y1.row(slot), u1) / norm(y1.row(slot)));
      b.push_back(dot(y2.row(slot), u2) / norm(y2.row(slot)));
    }
    const double critical = 1.628 * std::sqrt(2.0 / samples);  // alpha = 0.01
    CHECK(ks_statistic(a, b) < critical);
  }
}

TEST_CASE("random rotations are orthogonal") {
  Rng rng(5);
  const Matrix q = random_rotation(7, rng);
  const Matrix qqt = multiply(q, transpose(q));
  CHECK(max_abs_difference(qqt, Matrix::identity(7)) < 1e-12);
}
