#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "neuroscope/atlas.hpp"
#include "neuroscope/error.hpp"
#include "oracles.hpp"

using namespace neuroscope;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<double> random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> d(rows * cols);
  for (double& x : d) x = g(rng);
  return d;
}

// Max |a - s*b| over rows with the per-component sign s chosen from the data.
double signed_distance(const Projection& p, const oracle::PcaResult& o, std::size_t k) {
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < p.rows; ++i) {
    plus = std::max(plus, std::abs(p.at(i, k) - o.coords[i * p.components + k]));
    minus = std::max(minus, std::abs(p.at(i, k) + o.coords[i * p.components + k]));
  }
  return std::min(plus, minus);
}

}  // namespace

TEST_CASE("PCA matches a dense eigendecomposition up to sign") {
  std::mt19937_64 rng(31);
  std::size_t compared = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t rows = 2 + rng() % 11, cols = 1 + rng() % 12;
    const auto data = random_matrix(rng, rows, cols);
    const std::size_t comps = 2;
    const auto got = pca_project(data, rows, cols, comps);
    const auto want = oracle::pca(data, rows, cols, comps);
    for (std::size_t k = 0; k < comps; ++k) {
      REQUIRE_THAT(got.explained_variance_ratio[k], WithinAbs(want.ratio[k], 1e-9));
      REQUIRE(signed_distance(got, want, k) < 1e-6);
      ++compared;
    }
  }
  CHECK(compared == 160);
}

TEST_CASE("PCA explained variance is non-increasing and sums to at most one") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 3 + rng() % 8, cols = 3 + rng() % 8;
    const auto p = pca_project(random_matrix(rng, rows, cols), rows, cols, 3);
    REQUIRE(p.explained_variance_ratio[0] >= p.explained_variance_ratio[1] - 1e-12);
    REQUIRE(p.explained_variance_ratio[1] >= p.explained_variance_ratio[2] - 1e-12);
    REQUIRE(p.explained_variance_ratio[0] + p.explained_variance_ratio[1] + p.explained_variance_ratio[2] <=
            1.0 + 1e-9);
  }
}

TEST_CASE("rank-1 data collapses onto the first component") {
  const std::size_t rows = 9, cols = 6;
  std::vector<double> data(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) data[i * cols + j] = double(i + 1) * double(j + 2) * 0.5;
  const auto p = pca_project(data, rows, cols, 2);
  CHECK(p.explained_variance_ratio[0] > 0.999);
  for (std::size_t i = 0; i < rows; ++i) CHECK(std::abs(p.y(i)) < 1e-6);
}

TEST_CASE("sign convention makes the largest-magnitude coordinate positive") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 4 + rng() % 6, cols = 2 + rng() % 6;
    const auto p = pca_project(random_matrix(rng, rows, cols), rows, cols, 2);
    for (std::size_t k = 0; k < 2; ++k) {
      std::size_t arg = 0;
      for (std::size_t i = 1; i < rows; ++i)
        if (std::abs(p.at(i, k)) > std::abs(p.at(arg, k))) arg = i;
      REQUIRE(p.at(arg, k) > 0.0);
    }
  }
}

TEST_CASE("PCA is deterministic and equivariant under row permutation") {
  std::mt19937_64 rng(21);
  const std::size_t rows = 7, cols = 5;
  const auto data = random_matrix(rng, rows, cols);
  const auto a = pca_project(data, rows, cols, 2);
  CHECK(a.coords == pca_project(data, rows, cols, 2).coords);

  std::vector<std::size_t> perm{3, 0, 6, 1, 5, 2, 4};
  std::vector<double> shuffled(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) shuffled[i * cols + j] = data[perm[i] * cols + j];
  const auto b = pca_project(shuffled, rows, cols, 2);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < 2; ++k) CHECK_THAT(b.at(i, k), WithinAbs(a.at(perm[i], k), 1e-9));
}

TEST_CASE("degenerate inputs") {
  const std::vector<double> same(12, 3.0);
  const auto p = pca_project(same, 4, 3, 2);
  for (double c : p.coords) CHECK(c == 0.0);
  CHECK(p.explained_variance_ratio == std::vector<double>{0.0, 0.0});

  const std::vector<double> one_col{1, 2, 3, 4};
  const auto q = pca_project(one_col, 4, 1, 2);
  CHECK_THAT(q.explained_variance_ratio[0], WithinAbs(1.0, 1e-12));
  for (std::size_t i = 0; i < 4; ++i) CHECK(q.y(i) == 0.0);

  CHECK_THROWS_AS(pca_project(one_col, 1, 4, 2), Error);
  CHECK_THROWS_AS(pca_project(one_col, 4, 1, 0), Error);
  CHECK_THROWS_AS(pca_project(one_col, 3, 1, 2), Error);
}

TEST_CASE("leading eigenpairs of a diagonal matrix") {
  const std::vector<double> m{1, 0, 0, 0, 4, 0, 0, 0, 2};
  const auto pairs = leading_eigenpairs(m, 3, 3);
  CHECK_THAT(pairs[0].value, WithinAbs(4.0, 1e-10));
  CHECK_THAT(pairs[1].value, WithinAbs(2.0, 1e-10));
  CHECK_THAT(pairs[2].value, WithinAbs(1.0, 1e-10));
  CHECK_THAT(std::abs(pairs[0].vector[1]), WithinAbs(1.0, 1e-10));
}

TEST_CASE("projection of an activation table uses neurons as rows") {
  ActivationTable t;
  t.neurons = 3;
  t.images = 2;
  t.values = {0, 0, 1, 1, 2, 2};
  const auto p = pca_project(t);
  CHECK(p.rows == 3);
  CHECK_THAT(p.explained_variance_ratio[0], WithinAbs(1.0, 1e-12));
  CHECK_THAT(std::abs(p.x(0)), WithinAbs(std::sqrt(2.0), 1e-9));
  CHECK_THAT(p.x(1), WithinAbs(0.0, 1e-9));
}
