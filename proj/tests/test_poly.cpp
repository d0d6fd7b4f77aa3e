#include <gtest/gtest.h>

#include <random>

#include "jstrata/poly_matrix.hpp"

using namespace jstrata;

namespace {

const std::vector<std::string> kNames2{"l1", "l2"};
const std::vector<std::string> kNames3{"l1", "l2", "l3"};
const std::vector<std::string> kNames4{"l1", "l2", "l3", "l4"};

Poly random_poly(std::uint32_t p, unsigned nv, unsigned max_deg, unsigned terms, std::mt19937& rng) {
  Poly r(p, nv);
  for (unsigned t = 0; t < terms; ++t) {
    std::vector<unsigned> e(nv);
    unsigned budget = rng() % (max_deg + 1);
    for (unsigned i = 0; i < nv && budget; ++i) {
      e[i] = rng() % (budget + 1);
      budget -= e[i];
    }
    r = r + Poly::monomial(p, nv, e, 1 + rng() % (p - 1));
  }
  return r;
}

PolyMatrix random_poly_matrix(std::uint32_t p, std::size_t n, std::size_t m, std::mt19937& rng, double density,
                              const std::vector<std::string>& names) {
  PolyMatrix a(p, names, n, m);
  std::bernoulli_distribution keep(density);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (keep(rng)) a.at(i, j) = random_poly(p, static_cast<unsigned>(names.size()), 2, 1 + rng() % 2, rng);
  return a;
}

// Low-rank instance: product of random n x k and k x m polynomial matrices.
PolyMatrix random_low_rank(std::uint32_t p, std::size_t n, std::size_t m, std::size_t k, std::mt19937& rng,
                           const std::vector<std::string>& names) {
  return random_poly_matrix(p, n, k, rng, 0.6, names) * random_poly_matrix(p, k, m, rng, 0.6, names);
}

// Determinant by permutation expansion.
Poly leibniz(const PolyMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Poly det(a.p(), a.nvars());
  do {
    std::size_t inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
    Poly term = Poly::constant(a.p(), a.nvars(), 1);
    for (std::size_t i = 0; i < n; ++i) term = term * a.at(i, perm[i]);
    det = inv % 2 ? det - term : det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace

TEST(Poly, ArithmeticMatchesEvaluation) {
  std::mt19937 rng(1);
  Field big(5, 4);
  std::uniform_int_distribution<std::uint64_t> d(0, big.size() - 1);
  for (int it = 0; it < 200; ++it) {
    Poly a = random_poly(5, 3, 4, 5, rng), b = random_poly(5, 3, 4, 5, rng);
    std::vector<Scalar> pt{d(rng), d(rng), d(rng)};
    const Scalar va = a.evaluate(big, pt), vb = b.evaluate(big, pt);
    EXPECT_EQ((a + b).evaluate(big, pt), big.add(va, vb));
    EXPECT_EQ((a - b).evaluate(big, pt), big.sub(va, vb));
    EXPECT_EQ((a * b).evaluate(big, pt), big.mul(va, vb));
    if (!b.is_zero()) {
      EXPECT_EQ((a * b).divexact(b), a);
    }
  }
}

TEST(Poly, InexactDivisionThrows) {
  Poly x = Poly::variable(7, 2, 0), y = Poly::variable(7, 2, 1);
  EXPECT_THROW((x + y).divexact(x), InternalError);
  EXPECT_EQ((x * x - y * y).divexact(x - y), x + y);
}

TEST(Poly, PrintAndParseRoundTrip) {
  const std::vector<std::string> names{"x0", "x1"};
  Poly p = Poly::parse("x0 - x1^2", 5, names);
  EXPECT_EQ(p.to_string(names), "x0 - x1^2");
  EXPECT_EQ(Poly::parse("2x0x1 + 3", 5, names).to_string(names), "2*x0*x1 - 2");
  EXPECT_EQ(Poly::parse("x0*x1^3 - x0 x1^3", 7, names).is_zero(), true);
  EXPECT_EQ(Poly::parse("(x0 + x1)^2", 3, names), Poly::parse("x0^2 + 2x0x1 + x1^2", 3, names));
  std::mt19937 rng(3);
  for (int it = 0; it < 100; ++it) {
    Poly q = random_poly(7, 2, 5, 4, rng);
    EXPECT_EQ(Poly::parse(q.to_string(names), 7, names), q);
  }
  EXPECT_THROW(Poly::parse("x0 + z", 5, names), InputError);
  EXPECT_THROW(Poly::parse("x0 +", 5, names), InputError);
  EXPECT_THROW(Poly::parse("x0^", 5, names), InputError);
}

TEST(Poly, HomogeneityAndDegree) {
  Poly a = Poly::parse("l1^2 + l1 l2", 5, kNames2);
  EXPECT_TRUE(a.is_homogeneous());
  EXPECT_EQ(a.total_degree(), 2u);
  EXPECT_FALSE((a + Poly::variable(5, 2, 0)).is_homogeneous());
  EXPECT_EQ(a.monic(), a);
  EXPECT_EQ(a.scaled(3).monic(), a);
}

TEST(PolyMatrix, SymbolicRankExamples) {
  PolyMatrix d(5, kNames2, 2, 2);
  d.at(0, 0) = Poly::variable(5, 2, 0);
  d.at(1, 1) = Poly::variable(5, 2, 1);
  EXPECT_EQ(symbolic_rank(d), 2u);
  EXPECT_EQ(bareiss_rank(d), 2u);
  PolyMatrix e(5, kNames2, 2, 2);
  e.at(0, 0) = e.at(1, 0) = Poly::variable(5, 2, 0);
  e.at(0, 1) = e.at(1, 1) = Poly::variable(5, 2, 1);
  EXPECT_EQ(symbolic_rank(e), 1u);
  EXPECT_EQ(bareiss_rank(e), 1u);
}

TEST(PolyMatrix, DeterminantMatchesLeibniz) {
  std::mt19937 rng(4);
  for (int it = 0; it < 60; ++it) {
    std::size_t n = 1 + rng() % 4;
    PolyMatrix a = random_poly_matrix(3, n, n, rng, 0.7, kNames2);
    EXPECT_EQ(determinant(a), leibniz(a));
  }
}

TEST(PolyMatrix, SymbolicRankIsMaxOfEvaluations) {
  std::mt19937 rng(5);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    Field big(p, 6);
    std::uniform_int_distribution<std::uint64_t> d(0, big.size() - 1);
    for (int it = 0; it < 25; ++it) {
      std::size_t n = 1 + rng() % 12, m = 1 + rng() % 12;
      PolyMatrix a = it % 2 ? random_poly_matrix(p, n, m, rng, 0.3, kNames2)
                            : random_low_rank(p, n, m, 1 + rng() % 4, rng, kNames2);
      std::size_t best = 0;
      for (int s = 0; s < 50; ++s) best = std::max(best, a.evaluate(big, {d(rng), d(rng)}).rank());
      const std::size_t sym = symbolic_rank(a);
      EXPECT_EQ(sym, best);
      EXPECT_EQ(bareiss_rank(a), sym);
    }
  }
}

TEST(PolyMatrix, ComponentsSplitBlockDiagonal) {
  PolyMatrix a(7, kNames2, 3, 3);
  a.at(0, 1) = Poly::variable(7, 2, 0);
  a.at(2, 0) = Poly::variable(7, 2, 1);
  a.at(2, 2) = Poly::variable(7, 2, 0);
  auto comps = a.components();
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0].rows, (std::vector<std::size_t>{0}));
  EXPECT_EQ(comps[0].cols, (std::vector<std::size_t>{1}));
  EXPECT_EQ(comps[1].rows, (std::vector<std::size_t>{2}));
  EXPECT_EQ(comps[1].cols, (std::vector<std::size_t>{0, 2}));
}

TEST(MinorsIdeal, GenericDeterminant) {
  PolyMatrix a(5, kNames4, 2, 2);
  for (unsigned i = 0; i < 4; ++i) a.at(i / 2, i % 2) = Poly::variable(5, 4, i);
  auto ideal = minors_ideal(a, 2);
  ASSERT_TRUE(ideal.has_value());
  ASSERT_EQ(ideal->size(), 1u);
  EXPECT_EQ((*ideal)[0].to_string(kNames4), "l1*l4 - l2*l3");
}

TEST(MinorsIdeal, VanishingAboveRank) {
  std::mt19937 rng(6);
  PolyMatrix a = random_low_rank(3, 4, 4, 2, rng, kNames2);
  auto ideal = minors_ideal(a, 3);
  ASSERT_TRUE(ideal.has_value());
  EXPECT_TRUE(ideal->empty());
  EXPECT_THROW(minors_ideal(a, 0), InputError);
  EXPECT_THROW(minors_ideal(a, 5), InputError);
}

TEST(MinorsIdeal, ZeroSetIsRankDropLocus) {
  std::mt19937 rng(7);
  for (std::uint32_t p : {2u, 3u}) {
    Field f(p);
    for (int it = 0; it < 30; ++it) {
      const auto& names = it % 2 ? kNames2 : kNames3;
      const unsigned nv = static_cast<unsigned>(names.size());
      std::size_t n = 1 + rng() % 4, m = 1 + rng() % 4;
      PolyMatrix a = random_poly_matrix(p, n, m, rng, 0.5, names);
      for (std::size_t s = 1; s <= std::min(n, m); ++s) {
        auto ideal = minors_ideal(a, s);
        ASSERT_TRUE(ideal.has_value());
        std::vector<Scalar> pt(nv, 0);
        std::size_t total = 1;
        for (unsigned i = 0; i < nv; ++i) total *= p;
        for (std::size_t code = 0; code < total; ++code) {
          std::size_t c = code;
          for (unsigned i = 0; i < nv; ++i) {
            pt[i] = c % p;
            c /= p;
          }
          bool all_vanish = true;
          for (const auto& g : *ideal) all_vanish = all_vanish && g.evaluate(f, pt) == 0;
          EXPECT_EQ(all_vanish, a.evaluate(f, pt).rank() < s);
        }
      }
    }
  }
}

TEST(MinorsIdeal, BudgetOmitsLargeIdeals) {
  std::mt19937 rng(8);
  PolyMatrix a = random_poly_matrix(5, 12, 12, rng, 0.9, kNames2);
  EXPECT_FALSE(minors_ideal(a, 6, 1000).has_value());
}
