#pragma once

// Jordan types: partitions with parts in 1..p, written a = sum a_i [i].

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "jstrata/error.hpp"
#include "jstrata/field.hpp"
#include "jstrata/matrix.hpp"

namespace jstrata {

enum class Dominance { greater, less, equal, incomparable };

inline const char* to_string(Dominance d) {
  switch (d) {
    case Dominance::greater: return "greater";
    case Dominance::less: return "less";
    case Dominance::equal: return "equal";
    default: return "incomparable";
  }
}

class JordanType {
 public:
  JordanType() = default;
  explicit JordanType(std::uint32_t p) : p_(p), counts_(p, 0) {
    if (p < 2) throw InputError("Jordan types need p >= 2");
  }
  /// counts[i-1] = number of blocks of size i.
  JordanType(std::uint32_t p, std::vector<std::size_t> counts) : p_(p), counts_(std::move(counts)) {
    if (p < 2) throw InputError("Jordan types need p >= 2");
    if (counts_.size() > p) {
      for (std::size_t i = p; i < counts_.size(); ++i)
        if (counts_[i]) throw InputError("Jordan block larger than p");
    }
    counts_.resize(p, 0);
  }

  /// Builds a type from block sizes, e.g. {3, 3, 1}.
  static JordanType from_parts(std::uint32_t p, const std::vector<std::size_t>& parts) {
    JordanType a(p);
    for (std::size_t s : parts) {
      if (s < 1 || s > p) throw InputError("Jordan block size " + std::to_string(s) + " outside 1.." + std::to_string(p));
      ++a.counts_[s - 1];
    }
    return a;
  }

  /// The unique type with rk(t^j) = ranks[j-1]; the chain is padded with zeros.
  static JordanType from_rank_chain(std::uint32_t p, std::size_t dim, const std::vector<std::size_t>& ranks) {
    std::vector<std::size_t> r(p + 2, 0);
    r[0] = dim;
    for (std::size_t j = 0; j < ranks.size(); ++j) {
      if (j + 1 > p) {
        if (ranks[j]) throw MathError("invalid-chain", "rank of t^" + std::to_string(j + 1) + " must vanish");
        continue;
      }
      r[j + 1] = ranks[j];
    }
    if (r[p]) throw MathError("invalid-chain", "rank of t^p must vanish");
    for (std::size_t j = 1; j <= p; ++j) {
      if (r[j] > r[j - 1]) throw MathError("invalid-chain", "rank chain is not monotone");
      if (r[j - 1] - r[j] < r[j] - r[j + 1]) throw MathError("invalid-chain", "rank chain is not convex");
    }
    JordanType a(p);
    for (std::size_t i = 1; i <= p; ++i) a.counts_[i - 1] = r[i - 1] - 2 * r[i] + r[i + 1];
    return a;
  }

  /// Type of a p-nilpotent square matrix.
  static JordanType of_matrix(std::uint32_t p, const Matrix& m) {
    if (!m.square()) throw InputError("Jordan type of a non-square matrix");
    std::vector<std::size_t> ranks;
    Matrix power = m;
    for (std::uint32_t j = 1; j <= p; ++j) {
      std::size_t rk = power.rank();
      ranks.push_back(rk);
      if (rk == 0) break;
      if (j < p) power = power * m;
    }
    if (ranks.size() == p && ranks.back() != 0) throw MathError("not-nilpotent", "operator is not p-nilpotent");
    return from_rank_chain(p, m.rows(), ranks);
  }

  std::uint32_t p() const { return p_; }
  const std::vector<std::size_t>& counts() const { return counts_; }
  std::size_t count(std::size_t i) const { return (i >= 1 && i <= p_) ? counts_[i - 1] : 0; }
  std::size_t dimension() const {
    std::size_t d = 0;
    for (std::size_t i = 1; i <= p_; ++i) d += counts_[i - 1] * i;
    return d;
  }
  std::size_t blocks() const {
    std::size_t b = 0;
    for (auto c : counts_) b += c;
    return b;
  }
  std::size_t largest_part() const {
    for (std::size_t i = p_; i >= 1; --i)
      if (counts_[i - 1]) return i;
    return 0;
  }

  /// rk(t^j) = sum_{i > j} a_i (i - j).
  std::size_t rank_of_power(std::size_t j) const {
    if (j < 1 || j > p_) throw InputError("power " + std::to_string(j) + " outside 1.." + std::to_string(p_));
    std::size_t r = 0;
    for (std::size_t i = j + 1; i <= p_; ++i) r += counts_[i - 1] * (i - j);
    return r;
  }
  std::vector<std::size_t> rank_chain() const {
    std::vector<std::size_t> r;
    for (std::size_t j = 1; j <= p_; ++j) r.push_back(rank_of_power(j));
    return r;
  }

  /// Block sizes in descending order.
  std::vector<std::size_t> parts() const {
    std::vector<std::size_t> out;
    for (std::size_t i = p_; i >= 1; --i) out.insert(out.end(), counts_[i - 1], i);
    return out;
  }

  JordanType stable_part() const {
    JordanType a = *this;
    a.counts_[p_ - 1] = 0;
    return a;
  }
  std::size_t projective_count() const { return counts_[p_ - 1]; }
  bool is_projective() const { return dimension() == counts_[p_ - 1] * p_; }

  /// a^perp_i = a_{p-i}, defined for stable types.
  JordanType flip() const {
    if (counts_[p_ - 1]) throw MathError("projective-part", "flip is defined only for types without [p] blocks");
    JordanType a(p_);
    for (std::size_t i = 1; i < p_; ++i) a.counts_[i - 1] = counts_[p_ - i - 1];
    return a;
  }

  JordanType operator+(const JordanType& o) const {
    check_same_p(o);
    JordanType a = *this;
    for (std::size_t i = 0; i < p_; ++i) a.counts_[i] += o.counts_[i];
    return a;
  }
  /// n copies of [p] added.
  JordanType plus_projective(std::size_t n) const {
    JordanType a = *this;
    a.counts_[p_ - 1] += n;
    return a;
  }

  friend bool operator==(const JordanType& a, const JordanType& b) { return a.p_ == b.p_ && a.counts_ == b.counts_; }
  friend bool operator!=(const JordanType& a, const JordanType& b) { return !(a == b); }
  /// Lexicographic on descending parts; a total order for containers.
  friend bool operator<(const JordanType& a, const JordanType& b) {
    if (a.p_ != b.p_) return a.p_ < b.p_;
    for (std::size_t i = a.p_; i >= 1; --i)
      if (a.counts_[i - 1] != b.counts_[i - 1]) return a.counts_[i - 1] < b.counts_[i - 1];
    return false;
  }

  /// "16[5]+24[3]+17[1]"; the empty type prints as "0".
  std::string to_string() const {
    std::string out;
    for (std::size_t i = p_; i >= 1; --i) {
      if (!counts_[i - 1]) continue;
      if (!out.empty()) out += "+";
      out += std::to_string(counts_[i - 1]) + "[" + std::to_string(i) + "]";
    }
    return out.empty() ? "0" : out;
  }

  /// Accepts "4[3]+[1]", "4[3] + 1[1]", "0".
  static JordanType parse(const std::string& text, std::uint32_t p) {
    JordanType a(p);
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "0") return a;
    if (s.empty()) throw InputError("empty Jordan type");
    std::size_t pos = 0;
    auto number = [&](std::size_t& out) {
      std::size_t start = pos;
      out = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) out = out * 10 + (s[pos++] - '0');
      return pos > start;
    };
    while (true) {
      std::size_t mult = 1, size = 0;
      if (!number(mult)) mult = 1;
      if (pos >= s.size() || s[pos] != '[') throw InputError("cannot parse Jordan type \"" + text + "\"");
      ++pos;
      if (!number(size) || pos >= s.size() || s[pos] != ']')
        throw InputError("cannot parse Jordan type \"" + text + "\"");
      ++pos;
      if (size < 1 || size > p) throw InputError("Jordan block [" + std::to_string(size) + "] exceeds p");
      a.counts_[size - 1] += mult;
      if (pos == s.size()) break;
      if (s[pos] != '+') throw InputError("cannot parse Jordan type \"" + text + "\"");
      ++pos;
    }
    return a;
  }

 private:
  void check_same_p(const JordanType& o) const {
    if (p_ != o.p_) throw InputError("Jordan types for different p");
  }

  std::uint32_t p_ = 2;
  std::vector<std::size_t> counts_ = std::vector<std::size_t>(2, 0);
};

inline std::ostream& operator<<(std::ostream& os, const JordanType& a) { return os << a.to_string(); }

/// Dominance of partitions by partial sums of the descending parts.
inline Dominance compare_dominance(const JordanType& a, const JordanType& b) {
  if (a.p() != b.p()) throw InputError("Jordan types for different p");
  if (a.dimension() != b.dimension())
    throw InputError("dominance needs equal dimensions (" + std::to_string(a.dimension()) + " vs " +
                     std::to_string(b.dimension()) + ")");
  const auto pa = a.parts(), pb = b.parts();
  const std::size_t n = std::max(pa.size(), pb.size());
  long long sa = 0, sb = 0;
  bool ge = true, le = true;
  for (std::size_t k = 0; k < n; ++k) {
    sa += k < pa.size() ? static_cast<long long>(pa[k]) : 0;
    sb += k < pb.size() ? static_cast<long long>(pb[k]) : 0;
    if (sa < sb) ge = false;
    if (sa > sb) le = false;
  }
  if (ge && le) return Dominance::equal;
  if (ge) return Dominance::greater;
  if (le) return Dominance::less;
  return Dominance::incomparable;
}

namespace detail {

// Type of J_i (x) 1 + 1 (x) J_j over GF(p).
inline JordanType block_tensor(std::uint32_t p, std::size_t i, std::size_t j) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::size_t, std::size_t>, JordanType> cache;
  if (i > j) std::swap(i, j);
  const auto key = std::make_tuple(p, i, j);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Field f(p);
  Matrix a = Matrix::jordan_block(f, i), b = Matrix::jordan_block(f, j);
  Matrix t = a.kron(Matrix::identity(f, j)) + Matrix::identity(f, i).kron(b);
  JordanType r = JordanType::of_matrix(p, t);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, r);
  return r;
}

}  // namespace detail

/// Type of J_a (x) 1 + 1 (x) J_b, assembled blockwise from explicit matrices.
inline JordanType tensor_jtype(const JordanType& a, const JordanType& b) {
  if (a.p() != b.p()) throw InputError("Jordan types for different p");
  const std::uint32_t p = a.p();
  JordanType r(p);
  for (std::size_t i = 1; i <= p; ++i) {
    if (!a.count(i)) continue;
    for (std::size_t j = 1; j <= p; ++j) {
      if (!b.count(j)) continue;
      const JordanType blk = detail::block_tensor(p, i, j);
      std::vector<std::size_t> c(p);
      for (std::size_t k = 0; k < p; ++k) c[k] = blk.counts()[k] * a.count(i) * b.count(j);
      r = r + JordanType(p, c);
    }
  }
  return r;
}

}  // namespace jstrata
