#pragma once

// Exact arithmetic in GF(p) and GF(p^m).
//
// Elements are stored as dense indices: an element of GF(p^m) represented by
// the residue c_0 + c_1 x + ... + c_{m-1} x^{m-1} modulo the defining
// polynomial has index c_0 + c_1 p + ... + c_{m-1} p^{m-1}. The prime field is
// therefore embedded in every extension as the indices 0..p-1.
//
// Small extensions (q <= 2^21) use log/antilog/Zech tables; larger ones fall
// back to digit-wise polynomial arithmetic.

#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jstrata/error.hpp"

namespace jstrata {

using Scalar = std::uint64_t;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Dense univariate polynomials over GF(p), lowest coefficient first.
using UPoly = std::vector<std::uint32_t>;

inline void upoly_trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // Fermat; p is prime and small.
  std::uint64_t r = 1, b = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

inline UPoly upoly_mod(UPoly a, const UPoly& m, std::uint32_t p) {
  upoly_trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::size_t shift = a.size() - 1 - dm;
    const std::uint64_t f = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      std::uint64_t sub = f * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    upoly_trim(a);
  }
  return a;
}

inline UPoly upoly_mulmod(const UPoly& a, const UPoly& b, const UPoly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  }
  return upoly_mod(std::move(r), m, p);
}

inline UPoly upoly_gcd(UPoly a, UPoly b, std::uint32_t p) {
  upoly_trim(a);
  upoly_trim(b);
  while (!b.empty()) {
    UPoly r = upoly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Rabin-style irreducibility: f of degree m is irreducible iff
/// gcd(x^{p^i} - x, f) = 1 for 1 <= i <= m/2.
inline bool upoly_irreducible(const UPoly& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  UPoly x{0, 1};
  UPoly xp = x;
  for (std::size_t i = 1; i <= m / 2; ++i) {
    // xp <- xp^p mod f
    UPoly base = xp, acc{1};
    std::uint32_t e = p;
    while (e) {
      if (e & 1) acc = upoly_mulmod(acc, base, f, p);
      base = upoly_mulmod(base, base, f, p);
      e >>= 1;
    }
    xp = acc;
    UPoly diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    upoly_trim(diff);
    if (diff.empty()) return false;
    UPoly g = upoly_gcd(f, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

/// Lexicographically smallest monic irreducible polynomial of degree m over
/// GF(p), comparing (c_{m-1}, ..., c_0) from the highest non-leading
/// coefficient down.
inline UPoly smallest_irreducible(std::uint32_t p, unsigned m) {
  const std::uint64_t count = ipow(p, m);
  for (std::uint64_t code = 0; code < count; ++code) {
    UPoly f(m + 1, 0);
    f[m] = 1;
    std::uint64_t c = code;
    // most significant digit of the code is c_{m-1}
    for (unsigned i = 0; i < m; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (m > 1 && f[0] == 0) continue;
    if (upoly_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

struct FieldData {
  std::uint32_t p = 2;
  unsigned m = 1;
  std::uint64_t q = 2;
  UPoly modulus;  // monic, degree m; {0,1} for m = 1
  bool tabled = false;
  std::vector<std::uint32_t> exp_table;   // size q-1
  std::vector<std::uint32_t> log_table;   // size q, log[0] unused
  std::vector<std::int64_t> zech_table;   // log(1 + g^n), -1 when 1 + g^n = 0
  std::vector<std::uint32_t> prime_inv;   // inverses in GF(p)
};

inline constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 21;

inline std::vector<std::uint32_t> to_digits(std::uint64_t a, std::uint32_t p, unsigned m) {
  std::vector<std::uint32_t> d(m, 0);
  for (unsigned i = 0; i < m; ++i) {
    d[i] = static_cast<std::uint32_t>(a % p);
    a /= p;
  }
  return d;
}

inline std::uint64_t from_digits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
  std::uint64_t a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = a * p + d[i];
  return a;
}

inline std::shared_ptr<const FieldData> build_field(std::uint32_t p, unsigned m) {
  auto fd = std::make_shared<FieldData>();
  fd->p = p;
  fd->m = m;
  fd->q = ipow(p, m);
  fd->prime_inv.assign(p, 0);
  for (std::uint32_t a = 1; a < p; ++a) fd->prime_inv[a] = inv_mod(a, p);
  if (m == 1) {
    fd->modulus = {0, 1};
    return fd;
  }
  fd->modulus = smallest_irreducible(p, m);
  if (fd->q > kTableLimit) return fd;

  // Search for a primitive element among small indices.
  const std::uint64_t q = fd->q;
  auto mul_digits = [&](std::uint64_t a, std::uint64_t b) {
    UPoly da = to_digits(a, p, m), db = to_digits(b, p, m);
    upoly_trim(da);
    upoly_trim(db);
    UPoly r = upoly_mulmod(da, db, fd->modulus, p);
    r.resize(m, 0);
    return from_digits(r, p);
  };
  for (std::uint64_t g = p; g < q; ++g) {
    std::vector<std::uint32_t> ex(q - 1);
    std::uint64_t cur = 1;
    bool ok = true;
    for (std::uint64_t n = 0; n < q - 1; ++n) {
      if (n > 0 && cur == 1) {
        ok = false;
        break;
      }
      ex[n] = static_cast<std::uint32_t>(cur);
      cur = mul_digits(cur, g);
    }
    if (!ok || cur != 1) continue;
    fd->exp_table = std::move(ex);
    fd->log_table.assign(q, 0);
    for (std::uint64_t n = 0; n < q - 1; ++n) fd->log_table[fd->exp_table[n]] = static_cast<std::uint32_t>(n);
    fd->zech_table.assign(q - 1, -1);
    for (std::uint64_t n = 0; n < q - 1; ++n) {
      // 1 + g^n: add 1 to the constant digit
      std::uint64_t e = fd->exp_table[n];
      std::uint64_t c0 = e % p;
      std::uint64_t s = e - c0 + (c0 + 1) % p;
      fd->zech_table[n] = (s == 0) ? -1 : static_cast<std::int64_t>(fd->log_table[s]);
    }
    fd->tabled = true;
    return fd;
  }
  throw std::logic_error("no primitive element found");
}

inline std::shared_ptr<const FieldData> field_data(std::uint32_t p, unsigned m) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, unsigned>, std::shared_ptr<const FieldData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto fd = build_field(p, m);
  cache.emplace(key, fd);
  return fd;
}

}  // namespace detail

/// A finite field GF(p^m), 2 <= p <= 251. Cheap to copy; all copies of the
/// same (p, m) share one set of tables.
class Field {
 public:
  Field() : Field(2, 1) {}
  explicit Field(std::uint32_t p, unsigned m = 1) {
    if (p < 2 || p > 251 || !detail::is_prime(p))
      throw InputError("field characteristic must be a prime in [2, 251], got " + std::to_string(p));
    if (m < 1 || m > 16) throw InputError("extension degree must be in [1, 16]");
    if (std::pow(static_cast<double>(p), m) > 4.0e18)
      throw InputError("field GF(" + std::to_string(p) + "^" + std::to_string(m) + ") too large");
    data_ = detail::field_data(p, m);
  }

  std::uint32_t p() const { return data_->p; }
  unsigned degree() const { return data_->m; }
  std::uint64_t size() const { return data_->q; }
  bool is_prime_field() const { return data_->m == 1; }
  /// Defining polynomial, lowest coefficient first (monic, degree m).
  const std::vector<std::uint32_t>& modulus() const { return data_->modulus; }

  friend bool operator==(const Field& a, const Field& b) { return a.p() == b.p() && a.degree() == b.degree(); }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }

  Scalar from_int(long long v) const {
    const long long p = data_->p;
    long long r = v % p;
    if (r < 0) r += p;
    return static_cast<Scalar>(r);
  }

  Scalar add(Scalar a, Scalar b) const {
    const auto& d = *data_;
    if (d.m == 1) {
      Scalar s = a + b;
      return s >= d.p ? s - d.p : s;
    }
    if (a == 0) return b;
    if (b == 0) return a;
    if (d.tabled) {
      // a + b = a (1 + b/a)
      std::int64_t la = d.log_table[a], lb = d.log_table[b];
      std::int64_t n = lb - la;
      const std::int64_t order = static_cast<std::int64_t>(d.q - 1);
      if (n < 0) n += order;
      std::int64_t z = d.zech_table[n];
      if (z < 0) return 0;
      return d.exp_table[(la + z) % order];
    }
    return digitwise_add(a, b);
  }

  Scalar neg(Scalar a) const {
    const auto& d = *data_;
    if (a == 0) return 0;
    if (d.m == 1) return d.p - a;
    auto da = detail::to_digits(a, d.p, d.m);
    for (auto& c : da) c = c ? d.p - c : 0;
    return detail::from_digits(da, d.p);
  }

  Scalar sub(Scalar a, Scalar b) const { return add(a, neg(b)); }

  Scalar mul(Scalar a, Scalar b) const {
    const auto& d = *data_;
    if (a == 0 || b == 0) return 0;
    if (d.m == 1) return (a * b) % d.p;
    if (d.tabled) return d.exp_table[(static_cast<std::uint64_t>(d.log_table[a]) + d.log_table[b]) % (d.q - 1)];
    detail::UPoly da = detail::to_digits(a, d.p, d.m), db = detail::to_digits(b, d.p, d.m);
    detail::upoly_trim(da);
    detail::upoly_trim(db);
    auto r = detail::upoly_mulmod(da, db, d.modulus, d.p);
    r.resize(d.m, 0);
    return detail::from_digits(r, d.p);
  }

  Scalar inv(Scalar a) const {
    const auto& d = *data_;
    if (a == 0) throw std::domain_error("division by zero in finite field");
    if (d.m == 1) return d.prime_inv[a];
    if (d.tabled) {
      std::uint64_t order = d.q - 1;
      return d.exp_table[(order - d.log_table[a]) % order];
    }
    return pow(a, d.q - 2);
  }

  Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }

  Scalar pow(Scalar a, std::uint64_t e) const {
    Scalar r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Coefficient vector (length m, lowest first) of an element.
  std::vector<std::uint32_t> coefficients(Scalar a) const { return detail::to_digits(a, data_->p, data_->m); }
  Scalar from_coefficients(const std::vector<std::uint32_t>& c) const {
    if (c.size() > data_->m) throw InputError("too many coefficients for field element");
    std::vector<std::uint32_t> d(data_->m, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= data_->p) throw InputError("coefficient out of range for GF(p)");
      d[i] = c[i];
    }
    return detail::from_digits(d, data_->p);
  }

  std::string name() const {
    return data_->m == 1 ? "GF(" + std::to_string(data_->p) + ")"
                         : "GF(" + std::to_string(data_->p) + "^" + std::to_string(data_->m) + ")";
  }

 private:
  Scalar digitwise_add(Scalar a, Scalar b) const {
    const auto& d = *data_;
    auto da = detail::to_digits(a, d.p, d.m), db = detail::to_digits(b, d.p, d.m);
    for (unsigned i = 0; i < d.m; ++i) da[i] = (da[i] + db[i]) % d.p;
    return detail::from_digits(da, d.p);
  }

  std::shared_ptr<const detail::FieldData> data_;
};

}  // namespace jstrata
