#pragma once

// Sparse multivariate polynomials over GF(p) in at most four variables.
//
// A monomial is packed into 64 bits, 16 bits per exponent with variable 0 in
// the most significant lane, so integer comparison of packed monomials is the
// lexicographic order x0 > x1 > x2 > x3. Terms are kept sorted in decreasing
// order with nonzero coefficients.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jstrata/error.hpp"
#include "jstrata/field.hpp"

namespace jstrata {

class Poly {
 public:
  static constexpr unsigned kMaxVars = 4;
  static constexpr std::uint64_t kLaneMax = 0xFFFF;

  struct Term {
    std::uint64_t mono;
    std::uint32_t coeff;
    friend bool operator==(const Term& a, const Term& b) { return a.mono == b.mono && a.coeff == b.coeff; }
  };

  Poly() = default;
  Poly(std::uint32_t p, unsigned nvars) : p_(p), nvars_(nvars) {
    if (nvars > kMaxVars) throw InputError("at most 4 polynomial variables are supported");
  }

  static Poly constant(std::uint32_t p, unsigned nvars, long long c) {
    Poly r(p, nvars);
    long long v = c % static_cast<long long>(p);
    if (v < 0) v += p;
    if (v) r.terms_.push_back({0, static_cast<std::uint32_t>(v)});
    return r;
  }

  static Poly variable(std::uint32_t p, unsigned nvars, unsigned i, unsigned exp = 1) {
    if (i >= nvars) throw InputError("variable index out of range");
    Poly r(p, nvars);
    r.terms_.push_back({pack_single(i, exp), 1});
    return r;
  }

  static Poly monomial(std::uint32_t p, unsigned nvars, const std::vector<unsigned>& exps, std::uint32_t c) {
    Poly r(p, nvars);
    if (c % p) r.terms_.push_back({pack(exps), c % p});
    return r;
  }

  std::uint32_t p() const { return p_; }
  unsigned nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == 0); }
  std::size_t size() const { return terms_.size(); }

  static unsigned lane(std::uint64_t mono, unsigned i) {
    return static_cast<unsigned>((mono >> (48 - 16 * i)) & kLaneMax);
  }
  static std::uint64_t pack_single(unsigned i, unsigned e) {
    if (e > kLaneMax) throw InputError("exponent too large");
    return static_cast<std::uint64_t>(e) << (48 - 16 * i);
  }
  static std::uint64_t pack(const std::vector<unsigned>& exps) {
    std::uint64_t m = 0;
    for (unsigned i = 0; i < exps.size(); ++i) m |= pack_single(i, exps[i]);
    return m;
  }
  static unsigned mono_degree(std::uint64_t mono) {
    unsigned d = 0;
    for (unsigned i = 0; i < kMaxVars; ++i) d += lane(mono, i);
    return d;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, mono_degree(t.mono));
    return d;
  }

  unsigned degree_in(unsigned i) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, lane(t.mono, i));
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned d = mono_degree(terms_[0].mono);
    return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return mono_degree(t.mono) == d; });
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.p_ == b.p_ && a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  /// Total order used for deterministic sorting and deduplication.
  friend bool operator<(const Poly& a, const Poly& b) {
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a.terms_[i].mono != b.terms_[i].mono) return a.terms_[i].mono > b.terms_[i].mono;
      if (a.terms_[i].coeff != b.terms_[i].coeff) return a.terms_[i].coeff < b.terms_[i].coeff;
    }
    return a.terms_.size() < b.terms_.size();
  }

  Poly operator+(const Poly& o) const { return combine(o, 1); }
  Poly operator-(const Poly& o) const { return combine(o, p_ - 1); }
  Poly operator-() const { return scaled(p_ - 1); }

  Poly scaled(std::uint32_t c) const {
    Poly r(p_, nvars_);
    c %= p_;
    if (!c) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono, static_cast<std::uint32_t>(std::uint64_t(t.coeff) * c % p_)});
    return r;
  }

  Poly operator*(const Poly& o) const {
    check_compat(o);
    Poly r(p_, nvars_);
    if (is_zero() || o.is_zero()) return r;
    for (unsigned i = 0; i < nvars_; ++i)
      if (degree_in(i) + o.degree_in(i) > kLaneMax) throw InputError("polynomial degree overflow");
    if (terms_.size() == 1 || o.terms_.size() == 1) {
      const Poly& big = terms_.size() == 1 ? o : *this;
      const Term t = terms_.size() == 1 ? terms_[0] : o.terms_[0];
      r.terms_.reserve(big.terms_.size());
      for (const auto& s : big.terms_)
        r.terms_.push_back({s.mono + t.mono, static_cast<std::uint32_t>(std::uint64_t(s.coeff) * t.coeff % p_)});
      return r;  // order is preserved by adding a fixed monomial
    }
    std::vector<Term> prod;
    prod.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_)
        prod.push_back({a.mono + b.mono, static_cast<std::uint32_t>(std::uint64_t(a.coeff) * b.coeff % p_)});
    std::sort(prod.begin(), prod.end(), [](const Term& x, const Term& y) { return x.mono > y.mono; });
    for (std::size_t i = 0; i < prod.size();) {
      std::uint64_t m = prod[i].mono;
      std::uint64_t c = 0;
      while (i < prod.size() && prod[i].mono == m) c += prod[i++].coeff;
      c %= p_;
      if (c) r.terms_.push_back({m, static_cast<std::uint32_t>(c)});
    }
    return r;
  }

  Poly pow(unsigned e) const {
    Poly r = constant(p_, nvars_, 1);
    Poly b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// Exact quotient this / d. Throws InternalError if d does not divide.
  Poly divexact(const Poly& d) const {
    check_compat(d);
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly q(p_, nvars_);
    if (d.terms_.size() == 1) {
      const Term lt = d.terms_[0];
      const std::uint64_t inv = detail::inv_mod(lt.coeff, p_);
      q.terms_.reserve(terms_.size());
      for (const auto& t : terms_) {
        if (!divides(lt.mono, t.mono)) throw InternalError("inexact polynomial division");
        q.terms_.push_back({t.mono - lt.mono, static_cast<std::uint32_t>(t.coeff * inv % p_)});
      }
      return q;
    }
    Poly rem = *this;
    const Term lt = d.terms_[0];
    const std::uint64_t inv = detail::inv_mod(lt.coeff, p_);
    std::vector<Term> qterms;
    while (!rem.is_zero()) {
      const Term lr = rem.terms_[0];
      if (!divides(lt.mono, lr.mono)) throw InternalError("inexact polynomial division");
      const Term t{lr.mono - lt.mono, static_cast<std::uint32_t>(lr.coeff * inv % p_)};
      qterms.push_back(t);
      rem.subtract_term_multiple(d, t);
    }
    q.terms_ = std::move(qterms);
    return q;
  }

  /// Evaluation at a point whose coordinates lie in an extension of GF(p).
  Scalar evaluate(const Field& f, const std::vector<Scalar>& point) const {
    if (f.p() != p_) throw InputError("evaluation field has the wrong characteristic");
    if (point.size() < nvars_) throw InputError("evaluation point has too few coordinates");
    Scalar acc = 0;
    // cache powers per variable
    std::vector<std::vector<Scalar>> powers(nvars_);
    for (unsigned i = 0; i < nvars_; ++i) {
      const unsigned d = degree_in(i);
      powers[i].resize(d + 1);
      powers[i][0] = 1;
      for (unsigned e = 1; e <= d; ++e) powers[i][e] = f.mul(powers[i][e - 1], point[i]);
    }
    for (const auto& t : terms_) {
      Scalar v = t.coeff;
      for (unsigned i = 0; i < nvars_ && v; ++i) v = f.mul(v, powers[i][lane(t.mono, i)]);
      acc = f.add(acc, v);
    }
    return acc;
  }

  /// Scalar multiple with leading coefficient 1 (zero stays zero).
  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(detail::inv_mod(terms_[0].coeff, p_));
  }

  /// Human-readable form, e.g. "l1*l4 - l2*l3" or "x0 + 4*x1^2".
  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      std::uint32_t c = t.coeff;
      std::string mono;
      for (unsigned i = 0; i < nvars_; ++i) {
        const unsigned e = lane(t.mono, i);
        if (!e) continue;
        if (!mono.empty()) mono += "*";
        mono += (i < names.size() ? names[i] : "v" + std::to_string(i));
        if (e > 1) mono += "^" + std::to_string(e);
      }
      // print coefficients as signed residues in (-p/2, p/2]
      long long sc = c;
      if (sc > static_cast<long long>(p_) / 2) sc -= p_;
      const bool negative = sc < 0;
      const long long mag = negative ? -sc : sc;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      if (mono.empty())
        out += std::to_string(mag);
      else if (mag == 1)
        out += mono;
      else
        out += std::to_string(mag) + "*" + mono;
      first = false;
    }
    return out;
  }

  /// Parses integer-coefficient polynomials such as "x0 - x1^2", "2x0x1 + 3",
  /// "x0*x1^3". Products may be written with '*' or by juxtaposition.
  static Poly parse(const std::string& text, std::uint32_t p, const std::vector<std::string>& names) {
    Parser ps{text, 0, p, names};
    return ps.parse_sum();
  }

 private:
  static bool divides(std::uint64_t a, std::uint64_t b) {
    for (unsigned i = 0; i < kMaxVars; ++i)
      if (lane(a, i) > lane(b, i)) return false;
    return true;
  }

  void check_compat(const Poly& o) const {
    if (p_ != o.p_ || nvars_ != o.nvars_) throw InputError("incompatible polynomial rings");
  }

  Poly combine(const Poly& o, std::uint32_t sign) const {
    check_compat(o);
    Poly r(p_, nvars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && terms_[i].mono > o.terms_[j].mono)) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || o.terms_[j].mono > terms_[i].mono) {
        r.terms_.push_back({o.terms_[j].mono, static_cast<std::uint32_t>(std::uint64_t(o.terms_[j].coeff) * sign % p_)});
        ++j;
      } else {
        std::uint64_t c = (terms_[i].coeff + std::uint64_t(o.terms_[j].coeff) * sign) % p_;
        if (c) r.terms_.push_back({terms_[i].mono, static_cast<std::uint32_t>(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  // this -= t * d
  void subtract_term_multiple(const Poly& d, const Term& t) {
    std::vector<Term> out;
    out.reserve(terms_.size() + d.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < d.terms_.size()) {
      if (j < d.terms_.size()) {
        const std::uint64_t dm = d.terms_[j].mono + t.mono;
        const std::uint64_t dc = (p_ - std::uint64_t(d.terms_[j].coeff) * t.coeff % p_) % p_;
        if (i == terms_.size() || dm > terms_[i].mono) {
          if (dc) out.push_back({dm, static_cast<std::uint32_t>(dc)});
          ++j;
          continue;
        }
        if (dm == terms_[i].mono) {
          std::uint64_t c = (terms_[i].coeff + dc) % p_;
          if (c) out.push_back({dm, static_cast<std::uint32_t>(c)});
          ++i;
          ++j;
          continue;
        }
      }
      out.push_back(terms_[i++]);
    }
    terms_ = std::move(out);
  }

  struct Parser {
    const std::string& s;
    std::size_t pos;
    std::uint32_t p;
    const std::vector<std::string>& names;

    void skip() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& why) const {
      throw InputError("cannot parse polynomial \"" + s + "\" at offset " + std::to_string(pos) + ": " + why);
    }
    unsigned nvars() const { return static_cast<unsigned>(names.size()); }

    long long parse_int() {
      long long v = 0;
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        v = (v * 10 + (s[pos] - '0')) % static_cast<long long>(p);
        ++pos;
      }
      if (pos == start) fail("expected integer");
      return v;
    }

    bool at_factor_start() {
      skip();
      if (pos >= s.size()) return false;
      const char c = s[pos];
      return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(' || c == '*';
    }

    Poly parse_factor() {
      skip();
      if (pos >= s.size()) fail("unexpected end");
      Poly base(p, nvars());
      if (s[pos] == '(') {
        ++pos;
        base = parse_sum();
        skip();
        if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
        ++pos;
      } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        base = Poly::constant(p, nvars(), parse_int());
      } else {
        // longest matching variable name
        std::size_t best = names.size(), best_len = 0;
        for (std::size_t i = 0; i < names.size(); ++i)
          if (names[i].size() > best_len && s.compare(pos, names[i].size(), names[i]) == 0) {
            best = i;
            best_len = names[i].size();
          }
        if (best == names.size()) fail("unknown variable");
        pos += best_len;
        base = Poly::variable(p, nvars(), static_cast<unsigned>(best));
      }
      skip();
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        skip();
        std::size_t start = pos;
        unsigned e = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) e = e * 10 + static_cast<unsigned>(s[pos++] - '0');
        if (pos == start) fail("expected exponent");
        base = base.pow(e);
      }
      return base;
    }

    Poly parse_product() {
      Poly acc = parse_factor();
      while (true) {
        skip();
        if (pos < s.size() && s[pos] == '*') {
          ++pos;
          acc = acc * parse_factor();
        } else if (at_factor_start()) {
          acc = acc * parse_factor();
        } else {
          break;
        }
      }
      return acc;
    }

    Poly parse_sum() {
      skip();
      Poly acc(p, nvars());
      bool negate = false;
      if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
        negate = s[pos] == '-';
        ++pos;
      }
      Poly t = parse_product();
      acc = negate ? acc - t : acc + t;
      while (true) {
        skip();
        if (pos >= s.size() || (s[pos] != '+' && s[pos] != '-')) break;
        negate = s[pos] == '-';
        ++pos;
        t = parse_product();
        acc = negate ? acc - t : acc + t;
      }
      if (pos < s.size() && s[pos] != ')') fail("unexpected character");
      return acc;
    }
  };

  std::uint32_t p_ = 2;
  unsigned nvars_ = 0;
  std::vector<Term> terms_;
};

}  // namespace jstrata
