#include <gtest/gtest.h>

#include <random>
#include <set>

#include "jstrata/field.hpp"

using namespace jstrata;

namespace {

// Naive polynomial product over GF(p), lowest coefficient first.
std::vector<std::uint32_t> naive_mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                     std::uint32_t p) {
  std::vector<std::uint32_t> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return r;
}

// Irreducibility by exhaustive search for a monic factor of degree <= m/2.
bool brute_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  for (std::size_t d = 1; d <= m / 2; ++d) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<std::uint32_t> g(d + 1);
      std::size_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[d] = 1;
      // polynomial long division of f by g
      auto rem = f;
      for (std::size_t k = m; k >= d; --k) {
        std::uint32_t q = rem[k];
        if (q)
          for (std::size_t i = 0; i <= d; ++i) rem[k - d + i] = (rem[k - d + i] + p * p - q * g[i] % p) % p;
        if (k == d) break;
      }
      bool zero = true;
      for (std::size_t i = 0; i < d; ++i) zero = zero && rem[i] == 0;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Field, PrimeFieldArithmetic) {
  Field f(7);
  EXPECT_EQ(f.size(), 7u);
  EXPECT_EQ(f.add(5, 4), 2u);
  EXPECT_EQ(f.mul(3, 5), 1u);
  EXPECT_EQ(f.inv(3), 5u);
  EXPECT_EQ(f.neg(2), 5u);
  EXPECT_EQ(f.from_int(-1), 6u);
  EXPECT_EQ(f.name(), "GF(7)");
}

TEST(Field, RejectsBadParameters) {
  EXPECT_THROW(Field(4), InputError);
  EXPECT_THROW(Field(257), InputError);
  EXPECT_THROW(Field(5, 0), InputError);
  EXPECT_THROW(Field(1), InputError);
}

TEST(Field, ModulusIsSmallestIrreducible) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (unsigned m = 2; m <= 4; ++m) {
      Field f(p, m);
      const auto& mod = f.modulus();
      ASSERT_EQ(mod.size(), m + 1);
      EXPECT_EQ(mod[m], 1u);
      EXPECT_TRUE(brute_irreducible(mod, p));
      // every smaller monic candidate (coefficients c_{m-1}..c_0 read as digits) is reducible
      std::uint64_t code = 0;
      for (unsigned i = m; i-- > 0;) code = code * p + mod[i];
      for (std::uint64_t c = 0; c < code; ++c) {
        std::vector<std::uint32_t> g(m + 1);
        std::uint64_t x = c;
        for (unsigned i = 0; i < m; ++i) {
          g[i] = static_cast<std::uint32_t>(x % p);
          x /= p;
        }
        g[m] = 1;
        EXPECT_FALSE(brute_irreducible(g, p)) << "p=" << p << " m=" << m << " code=" << c;
      }
    }
  }
}

TEST(Field, KnownModuli) {
  // x^2 + 1 is the first irreducible quadratic over GF(3); x^2 + 2 over GF(5).
  EXPECT_EQ(Field(3, 2).modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
  EXPECT_EQ(Field(5, 2).modulus(), (std::vector<std::uint32_t>{2, 0, 1}));
  EXPECT_EQ(Field(2, 3).modulus(), (std::vector<std::uint32_t>{1, 1, 0, 1}));
}

TEST(Field, ExtensionMatchesPolynomialOracle) {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 5}, {3, 3}, {5, 2}, {7, 3}}) {
    Field f(p, m);
    std::mt19937 rng(p * 100 + m);
    std::uniform_int_distribution<std::uint64_t> d(0, f.size() - 1);
    for (int it = 0; it < 300; ++it) {
      Scalar a = d(rng), b = d(rng);
      auto ca = f.coefficients(a), cb = f.coefficients(b);
      // product reduced by the modulus
      auto prod = naive_mul(ca, cb, p);
      const auto& mod = f.modulus();
      for (std::size_t k = prod.size(); k-- > m;) {
        std::uint32_t q = prod[k];
        if (!q) continue;
        for (std::size_t i = 0; i <= m; ++i) prod[k - m + i] = (prod[k - m + i] + p * p - q * mod[i] % p) % p;
      }
      prod.resize(m);
      EXPECT_EQ(f.coefficients(f.mul(a, b)), prod);
      std::vector<std::uint32_t> sum(m);
      for (unsigned i = 0; i < m; ++i) sum[i] = (ca[i] + cb[i]) % p;
      EXPECT_EQ(f.coefficients(f.add(a, b)), sum);
      if (a) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      }
      EXPECT_EQ(f.add(a, f.neg(a)), 0u);
    }
  }
}

TEST(Field, LargeFieldWithoutTables) {
  Field f(3, 14);  // above the table limit
  Field small(3, 14);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> d(1, f.size() - 1);
  for (int it = 0; it < 50; ++it) {
    Scalar a = d(rng), b = d(rng), c = d(rng);
    EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  }
  // x^q = x
  Scalar x = 3;
  EXPECT_EQ(f.pow(x, f.size()), x);
  EXPECT_EQ(f, small);
}

TEST(Field, MultiplicativeGroupIsCyclic) {
  Field f(2, 4);
  std::set<Scalar> seen;
  bool found = false;
  for (Scalar g = 2; g < f.size() && !found; ++g) {
    seen.clear();
    Scalar x = 1;
    for (std::uint64_t i = 0; i < f.size() - 1; ++i) {
      seen.insert(x);
      x = f.mul(x, g);
    }
    found = seen.size() == f.size() - 1;
  }
  EXPECT_TRUE(found);
}

TEST(Field, PrimeSubfieldEmbedding) {
  Field f(5, 3);
  for (Scalar a = 0; a < 5; ++a)
    for (Scalar b = 0; b < 5; ++b) {
      EXPECT_EQ(f.add(a, b), (a + b) % 5);
      EXPECT_EQ(f.mul(a, b), (a * b) % 5);
    }
}
