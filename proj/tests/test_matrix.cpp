#include <gtest/gtest.h>

#include <random>

#include "jstrata/matrix.hpp"

using namespace jstrata;

namespace {

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937& rng, double density = 1.0) {
  std::uniform_int_distribution<std::uint64_t> d(0, f.size() - 1);
  std::bernoulli_distribution keep(density);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng)) m(i, j) = d(rng);
  return m;
}

// Rank as the size of the largest nonsingular minor, by brute force (small sizes).
std::size_t minor_rank(const Matrix& m) {
  const std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t s = n; s > 0; --s) {
    std::vector<bool> rsel(m.rows(), false), csel(m.cols(), false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<long>(s), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<long>(s), true);
      do {
        std::vector<std::size_t> rs, cs;
        for (std::size_t i = 0; i < m.rows(); ++i)
          if (rsel[i]) rs.push_back(i);
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (csel[j]) cs.push_back(j);
        // determinant by permutation expansion
        Matrix sub = m.submatrix(rs, cs);
        const Field& f = m.field();
        std::vector<std::size_t> perm(s);
        for (std::size_t i = 0; i < s; ++i) perm[i] = i;
        Scalar det = 0;
        do {
          std::size_t inversions = 0;
          for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = i + 1; j < s; ++j) inversions += perm[i] > perm[j];
          Scalar term = 1;
          for (std::size_t i = 0; i < s; ++i) term = f.mul(term, sub(i, perm[i]));
          det = inversions % 2 ? f.sub(det, term) : f.add(det, term);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (det) return s;
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

}  // namespace

TEST(Matrix, RankExamples) {
  Field f(5);
  EXPECT_EQ(Matrix(f, 4, 4).rank(), 0u);
  EXPECT_EQ(Matrix::identity(f, 6).rank(), 6u);
  EXPECT_EQ(Matrix::from_ints(f, {{1, 2}, {2, 4}}).rank(), 1u);
}

TEST(Matrix, KernelExamples) {
  Field f(5);
  EXPECT_TRUE(Matrix::identity(f, 4).kernel_basis().empty());
  auto k = Matrix(f, 3, 3).kernel_basis();
  ASSERT_EQ(k.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(k[i][j], i == j ? 1u : 0u);
  auto kj = Matrix::jordan_block(f, 3).kernel_basis();
  ASSERT_EQ(kj.size(), 1u);
  EXPECT_EQ(kj[0], (Vector{1, 0, 0}));
}

TEST(Matrix, RankAgreesWithMinors) {
  std::mt19937 rng(11);
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {3, 1}, {5, 1}, {3, 2}, {2, 3}}) {
    Field f(p, m);
    for (int it = 0; it < 60; ++it) {
      std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
      Matrix a = random_matrix(f, r, c, rng, 0.5);
      EXPECT_EQ(a.rank(), minor_rank(a)) << a.to_string();
    }
  }
}

TEST(Matrix, KernelHasRightSizeAndIsKernel) {
  std::mt19937 rng(12);
  for (std::uint32_t p : {3u, 7u}) {
    for (unsigned m : {1u, 2u}) {
      Field f(p, m);
      for (int it = 0; it < 40; ++it) {
        Matrix a = random_matrix(f, 1 + rng() % 7, 1 + rng() % 7, rng, 0.4);
        auto k = a.kernel_basis();
        EXPECT_EQ(k.size(), a.cols() - a.rank());
        for (const auto& v : k) {
          auto w = a.apply(v);
          for (auto x : w) EXPECT_EQ(x, 0u);
        }
        if (!k.empty()) {
          EXPECT_EQ(Matrix::from_columns(f, a.cols(), k).rank(), k.size());
        }
      }
    }
  }
}

TEST(Matrix, ProductRankBound) {
  std::mt19937 rng(13);
  Field f(5);
  for (int it = 0; it < 100; ++it) {
    std::size_t n = 1 + rng() % 8, k = 1 + rng() % 8, m = 1 + rng() % 8;
    Matrix a = random_matrix(f, n, k, rng, 0.3), b = random_matrix(f, k, m, rng, 0.3);
    EXPECT_LE((a * b).rank(), std::min(a.rank(), b.rank()));
  }
}

TEST(Matrix, SolveAndInverse) {
  std::mt19937 rng(14);
  Field f(7, 2);
  for (int it = 0; it < 30; ++it) {
    Matrix a = random_matrix(f, 5, 5, rng);
    if (a.rank() < 5) continue;
    Matrix inv = a.inverse();
    EXPECT_EQ(a * inv, Matrix::identity(f, 5));
    Matrix b = random_matrix(f, 5, 2, rng);
    EXPECT_EQ(a * a.solve(b), b);
  }
  Matrix sing = Matrix::from_ints(Field(7), {{1, 2}, {2, 4}});
  EXPECT_THROW(sing.inverse(), MathError);
  EXPECT_THROW(sing.solve(Matrix::from_ints(Field(7), {{1}, {0}})), MathError);
}

TEST(Matrix, KroneckerMixedProduct) {
  std::mt19937 rng(15);
  Field f(3);
  Matrix a = random_matrix(f, 2, 3, rng), b = random_matrix(f, 3, 2, rng);
  Matrix c = random_matrix(f, 2, 2, rng), d = random_matrix(f, 2, 2, rng);
  EXPECT_EQ(a.kron(c) * b.kron(d), (a * b).kron(c * d));
}

TEST(Matrix, LargePrimeFieldProduct) {
  // exercises the delayed reduction path
  std::mt19937 rng(16);
  Field f(251);
  Matrix a = random_matrix(f, 40, 40, rng), b = random_matrix(f, 40, 40, rng);
  Matrix c = a * b;
  for (int t = 0; t < 20; ++t) {
    std::size_t i = rng() % 40, j = rng() % 40;
    Scalar s = 0;
    for (std::size_t k = 0; k < 40; ++k) s = f.add(s, f.mul(a(i, k), b(k, j)));
    EXPECT_EQ(c(i, j), s);
  }
}

TEST(Matrix, JordanBlockPowers) {
  Field f(5);
  Matrix j = Matrix::jordan_block(f, 4);
  EXPECT_EQ(j.pow(1).rank(), 3u);
  EXPECT_EQ(j.pow(3).rank(), 1u);
  EXPECT_TRUE(j.pow(4).is_zero());
}
