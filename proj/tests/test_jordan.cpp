#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "jstrata/jordan.hpp"

using namespace jstrata;

namespace {

JordanType T(const std::string& s, std::uint32_t p) { return JordanType::parse(s, p); }

// All Jordan types of dimension n with parts <= p.
std::vector<JordanType> all_types(std::uint32_t p, std::size_t n) {
  std::vector<JordanType> out;
  std::vector<std::size_t> parts;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t maxpart) {
    if (left == 0) {
      out.push_back(JordanType::from_parts(p, parts));
      return;
    }
    for (std::size_t s = std::min(left, maxpart); s >= 1; --s) {
      parts.push_back(s);
      rec(left - s, s);
      parts.pop_back();
    }
  };
  rec(n, p);
  return out;
}

// Block-diagonal nilpotent matrix of a given type.
Matrix nilpotent_of(const JordanType& a) {
  Field f(a.p());
  Matrix m(f, 0, 0);
  for (std::size_t s : a.parts()) m = Matrix::block_diag(m, Matrix::jordan_block(f, s));
  return m;
}

Dominance by_ranks(const JordanType& a, const JordanType& b) {
  bool ge = true, le = true;
  for (std::size_t j = 1; j <= a.p(); ++j) {
    if (a.rank_of_power(j) < b.rank_of_power(j)) ge = false;
    if (a.rank_of_power(j) > b.rank_of_power(j)) le = false;
  }
  if (ge && le) return Dominance::equal;
  if (ge) return Dominance::greater;
  if (le) return Dominance::less;
  return Dominance::incomparable;
}

}  // namespace

TEST(Jordan, FromRankChainExamples) {
  EXPECT_EQ(JordanType::from_rank_chain(5, 4, {2, 1, 0, 0, 0}), T("[3]+[1]", 5));
  EXPECT_EQ(JordanType::from_rank_chain(5, 6, {0, 0, 0, 0, 0}), T("6[1]", 5));
  EXPECT_EQ(JordanType::from_rank_chain(7, 13, {8, 4, 0, 0, 0, 0, 0}), T("4[3]+1[1]", 7));
}

TEST(Jordan, FromRankChainOracleMatrix) {
  // [3] + [1] built as a matrix; its ranks give the type back
  Field f(5);
  Matrix m = Matrix::block_diag(Matrix::jordan_block(f, 3), Matrix(f, 1, 1));
  EXPECT_EQ(m.rank(), 2u);
  EXPECT_EQ((m * m).rank(), 1u);
  EXPECT_EQ(JordanType::of_matrix(5, m).to_string(), "1[3]+1[1]");
}

TEST(Jordan, InvalidChains) {
  EXPECT_THROW(JordanType::from_rank_chain(5, 4, {2, 3}), MathError);       // not monotone
  EXPECT_THROW(JordanType::from_rank_chain(5, 4, {1, 1}), MathError);       // not convex
  EXPECT_THROW(JordanType::from_rank_chain(3, 6, {4, 2, 1}), MathError);    // t^p != 0
  EXPECT_THROW(JordanType::from_rank_chain(5, 2, {3}), MathError);
}

TEST(Jordan, RankOfPower) {
  EXPECT_EQ(T("16[5]+24[3]+17[1]", 7).rank_of_power(1), 112u);
  EXPECT_EQ(T("3[2]", 5).rank_of_power(1), 3u);
  EXPECT_EQ(T("[3]+3[1]", 5).rank_of_power(1), 2u);
  EXPECT_EQ(T("2[3]", 5).rank_of_power(3), 0u);
  EXPECT_EQ(T("2[3]", 5).rank_of_power(4), 0u);
  EXPECT_THROW(T("[1]", 5).rank_of_power(0), InputError);
  EXPECT_THROW(T("[1]", 5).rank_of_power(6), InputError);
}

TEST(Jordan, RoundTripThroughRanks) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (std::size_t n = 0; n <= 10; ++n)
      for (const auto& a : all_types(p, n)) {
        EXPECT_EQ(JordanType::from_rank_chain(p, a.dimension(), a.rank_chain()), a);
        EXPECT_EQ(JordanType::of_matrix(p, nilpotent_of(a)), a);
        EXPECT_EQ(JordanType::parse(a.to_string(), p), a);
      }
}

TEST(Jordan, PrintingAndParsing) {
  EXPECT_EQ(T("16[5]+24[3]+17[1]", 7).to_string(), "16[5]+24[3]+17[1]");
  EXPECT_EQ(T("[1] + 4[3]", 7).to_string(), "4[3]+1[1]");
  EXPECT_EQ(JordanType(5).to_string(), "0");
  EXPECT_THROW(T("4[8]", 7), InputError);
  EXPECT_THROW(T("4[3", 7), InputError);
  EXPECT_THROW(T("4(3)", 7), InputError);
}

TEST(Jordan, DominanceExamples) {
  auto a = T("3[2]", 5);
  EXPECT_EQ(compare_dominance(a, a), Dominance::equal);
  EXPECT_EQ(compare_dominance(T("[2]", 5), T("2[1]", 5)), Dominance::greater);
  EXPECT_EQ(compare_dominance(T("2[1]", 5), T("[2]", 5)), Dominance::less);
  EXPECT_EQ(compare_dominance(T("3[2]", 5), T("[3]+3[1]", 5)), Dominance::incomparable);
  EXPECT_THROW(compare_dominance(T("[2]", 5), T("[3]", 5)), InputError);
}

TEST(Jordan, DominanceAgreesWithRanksExhaustive) {
  for (std::uint32_t p : {3u, 5u, 7u})
    for (std::size_t n = 1; n <= 12; ++n) {
      auto types = all_types(p, n);
      for (const auto& a : types)
        for (const auto& b : types) ASSERT_EQ(compare_dominance(a, b), by_ranks(a, b)) << a << " vs " << b;
    }
}

TEST(Jordan, StablePartAndFlip) {
  EXPECT_EQ(T("2[5]+[3]", 5).stable_part(), T("[3]", 5));
  EXPECT_EQ(T("[3]+[1]", 5).stable_part(), T("[3]+[1]", 5));
  EXPECT_EQ(T("4[5]+[4]", 5).stable_part(), T("[4]", 5));
  EXPECT_EQ(T("[1]", 7).flip(), T("[6]", 7));
  EXPECT_EQ(T("4[3]+[1]", 7).flip(), T("4[4]+[6]", 7));
  EXPECT_THROW(T("[7]", 7).flip(), MathError);
  for (std::size_t n = 0; n <= 8; ++n)
    for (const auto& a : all_types(5, n))
      if (!a.projective_count()) {
        EXPECT_EQ(a.flip().flip(), a);
      }
}

TEST(Jordan, TensorExamples) {
  const std::uint32_t p = 7;
  auto a = T("3[2]", p), b = T("[3]+3[1]", p), c = T("[2]", p);
  EXPECT_EQ(tensor_jtype(a, c), T("3[3]+3[1]", p));
  EXPECT_EQ(tensor_jtype(b, c), T("[4]+4[2]", p));
  EXPECT_EQ(tensor_jtype(T("[1]", p), b), b);
  auto w = T("4[3]+[1]", p);
  EXPECT_EQ(tensor_jtype(w, w), T("16[5]+24[3]+17[1]", p));
}

TEST(Jordan, TensorOfSingularType) {
  // The printed multiplicities 9[5]+16[4]+13[3]+12[2]+9[1] have dimension
  // 181, not 13^2 = 169. The matrix computation gives the consistent
  // decomposition below, whose rank 110 is the anchored value.
  auto s = T("3[3]+2[2]", 7);
  auto sq = tensor_jtype(s, s);
  EXPECT_EQ(sq, T("9[5]+12[4]+13[3]+12[2]+13[1]", 7));
  EXPECT_EQ(sq.dimension(), 169u);
  EXPECT_EQ(sq.rank_of_power(1), 110u);
  EXPECT_NE(T("9[5]+16[4]+13[3]+12[2]+9[1]", 7).dimension(), 169u);
}

TEST(Jordan, RankNotMonotoneUnderTensor) {
  auto a = T("3[2]", 5), b = T("[3]+3[1]", 5), c = T("[2]", 5);
  EXPECT_GT(a.rank_of_power(1), b.rank_of_power(1));
  EXPECT_EQ(tensor_jtype(a, c).rank_of_power(1), 6u);
  EXPECT_EQ(tensor_jtype(b, c).rank_of_power(1), 7u);
}

TEST(Jordan, TensorMatchesDirectMatrix) {
  std::mt19937 rng(2);
  for (std::uint32_t p : {3u, 5u}) {
    for (int it = 0; it < 30; ++it) {
      auto ta = all_types(p, 1 + rng() % 5), tb = all_types(p, 1 + rng() % 5);
      const auto& a = ta[rng() % ta.size()];
      const auto& b = tb[rng() % tb.size()];
      Matrix ma = nilpotent_of(a), mb = nilpotent_of(b);
      Field f(p);
      Matrix t = ma.kron(Matrix::identity(f, mb.rows())) + Matrix::identity(f, ma.rows()).kron(mb);
      EXPECT_EQ(tensor_jtype(a, b), JordanType::of_matrix(p, t));
    }
  }
}

TEST(Jordan, TensorCommutativeAssociative) {
  const std::uint32_t p = 5;
  std::vector<JordanType> small;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& a : all_types(p, n)) small.push_back(a);
  for (const auto& a : small)
    for (const auto& b : small) {
      EXPECT_EQ(tensor_jtype(a, b), tensor_jtype(b, a));
      EXPECT_EQ(tensor_jtype(a, b).dimension(), a.dimension() * b.dimension());
    }
  std::vector<JordanType> single;
  for (std::size_t s = 1; s <= 4; ++s) single.push_back(JordanType::from_parts(p, {s}));
  for (const auto& a : single)
    for (const auto& b : single)
      for (const auto& c : single)
        EXPECT_EQ(tensor_jtype(tensor_jtype(a, b), c), tensor_jtype(a, tensor_jtype(b, c)));
}

TEST(Jordan, TensorMonotoneInDominance) {
  const std::uint32_t p = 5;
  for (std::size_t n = 1; n <= 8; ++n) {
    auto types = all_types(p, n);
    std::vector<JordanType> cs;
    for (std::size_t m = 1; m <= 3; ++m)
      for (const auto& c : all_types(p, m)) cs.push_back(c);
    for (const auto& a : types)
      for (const auto& b : types) {
        if (compare_dominance(a, b) != Dominance::greater) continue;
        for (const auto& c : cs) {
          auto d = compare_dominance(tensor_jtype(a, c), tensor_jtype(b, c));
          EXPECT_TRUE(d == Dominance::greater || d == Dominance::equal) << a << " " << b << " " << c;
        }
      }
  }
}
