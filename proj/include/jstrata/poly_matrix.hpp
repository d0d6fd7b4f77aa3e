#pragma once

// Matrices with entries in GF(p)[l_1, ..., l_n]: evaluation, symbolic rank
// over the fraction field and determinantal (minor) ideals.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "jstrata/error.hpp"
#include "jstrata/field.hpp"
#include "jstrata/matrix.hpp"
#include "jstrata/poly.hpp"

namespace jstrata {

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::uint32_t p, std::vector<std::string> names, std::size_t rows, std::size_t cols)
      : p_(p), names_(std::move(names)), rows_(rows), cols_(cols),
        data_(rows * cols, Poly(p, static_cast<unsigned>(names_.size()))) {
    if (names_.size() > Poly::kMaxVars) throw InputError("at most 4 parameters are supported");
  }

  /// sum_i coeffs[i] * mats[i] for prime-field matrices mats.
  static PolyMatrix linear_combination(const std::vector<Poly>& coeffs, const std::vector<Matrix>& mats,
                                       std::vector<std::string> names) {
    if (coeffs.size() != mats.size() || mats.empty()) throw InputError("linear combination size mismatch");
    const Field& f = mats[0].field();
    if (!f.is_prime_field()) throw InputError("symbolic matrices require prime-field entries");
    PolyMatrix r(f.p(), std::move(names), mats[0].rows(), mats[0].cols());
    for (std::size_t k = 0; k < mats.size(); ++k) {
      if (mats[k].rows() != r.rows_ || mats[k].cols() != r.cols_) throw InputError("matrix shape mismatch");
      for (std::size_t i = 0; i < r.rows_; ++i)
        for (std::size_t j = 0; j < r.cols_; ++j)
          if (Scalar v = mats[k](i, j)) r.at(i, j) = r.at(i, j) + coeffs[k].scaled(static_cast<std::uint32_t>(v));
    }
    return r;
  }

  std::uint32_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<std::string>& names() const { return names_; }
  unsigned nvars() const { return static_cast<unsigned>(names_.size()); }

  Poly& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PolyMatrix operator*(const PolyMatrix& o) const {
    if (cols_ != o.rows_ || p_ != o.p_ || names_ != o.names_) throw InputError("polynomial matrix shape mismatch");
    PolyMatrix r(p_, names_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Poly& a = at(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const Poly& b = o.at(k, j);
          if (!b.is_zero()) r.at(i, j) = r.at(i, j) + a * b;
        }
      }
    return r;
  }

  PolyMatrix pow(unsigned e) const {
    if (rows_ != cols_) throw InputError("power of a non-square matrix");
    PolyMatrix r(p_, names_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) r.at(i, i) = Poly::constant(p_, nvars(), 1);
    for (unsigned k = 0; k < e; ++k) r = r * *this;
    return r;
  }

  Matrix evaluate(const Field& f, const std::vector<Scalar>& point) const {
    if (f.p() != p_) throw InputError("evaluation field has the wrong characteristic");
    Matrix m(f, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero()) m(i, j) = at(i, j).evaluate(f, point);
    return m;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Poly& q) { return q.is_zero(); });
  }

  PolyMatrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    PolyMatrix r(p_, names_, rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) r.at(i, j) = at(rs[i], cs[j]);
    return r;
  }

  /// Connected components of the bipartite graph on rows and columns whose
  /// edges are the nonzero entries. Empty rows/columns are dropped.
  struct Component {
    std::vector<std::size_t> rows, cols;
  };
  std::vector<Component> components() const {
    std::vector<std::size_t> parent(rows_ + cols_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<bool> used(rows_ + cols_, false);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero()) {
          used[i] = used[rows_ + j] = true;
          std::size_t a = find(i), b = find(rows_ + j);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<Component> out;
    std::vector<long> index(rows_ + cols_, -1);
    for (std::size_t x = 0; x < rows_ + cols_; ++x) {
      if (!used[x]) continue;
      std::size_t root = find(x);
      if (index[root] < 0) {
        index[root] = static_cast<long>(out.size());
        out.emplace_back();
      }
      auto& c = out[static_cast<std::size_t>(index[root])];
      if (x < rows_)
        c.rows.push_back(x);
      else
        c.cols.push_back(x - rows_);
    }
    return out;
  }

 private:
  std::uint32_t p_ = 2;
  std::vector<std::string> names_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Poly> data_;
};

namespace detail {

/// Fraction-free elimination with full pivoting on the nonzero entry of
/// lowest total degree. Returns the rank over the fraction field; when
/// `det` is given and the matrix is square of full rank it receives the
/// determinant.
inline std::size_t bareiss(std::vector<std::vector<Poly>> a, std::uint32_t p, unsigned nvars, Poly* det = nullptr) {
  const std::size_t n = a.size();
  const std::size_t m = n ? a[0].size() : 0;
  Poly prev = Poly::constant(p, nvars, 1);
  std::size_t k = 0;
  bool negate = false;
  for (; k < std::min(n, m); ++k) {
    std::size_t bi = n, bj = m;
    unsigned best_deg = ~0u;
    std::size_t best_size = ~std::size_t{0};
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < m; ++j) {
        const Poly& e = a[i][j];
        if (e.is_zero()) continue;
        const unsigned d = e.total_degree();
        if (d < best_deg || (d == best_deg && e.size() < best_size)) {
          best_deg = d;
          best_size = e.size();
          bi = i;
          bj = j;
        }
      }
    if (bi == n) break;
    if (bi != k) {
      std::swap(a[bi], a[k]);
      negate = !negate;
    }
    if (bj != k) {
      for (auto& row : a) std::swap(row[bj], row[k]);
      negate = !negate;
    }
    const Poly& piv = a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Poly aik = a[i][k];
      for (std::size_t j = k + 1; j < m; ++j) {
        Poly v = piv * a[i][j];
        if (!aik.is_zero() && !a[k][j].is_zero()) v = v - aik * a[k][j];
        a[i][j] = v.is_zero() ? v : v.divexact(prev);
      }
      a[i][k] = Poly(p, nvars);
    }
    prev = piv;
  }
  if (det) {
    if (k == n && n == m)
      *det = n == 0 ? Poly::constant(p, nvars, 1) : (negate ? -a[n - 1][n - 1] : a[n - 1][n - 1]);
    else
      *det = Poly(p, nvars);
  }
  return k;
}

inline std::vector<std::vector<Poly>> to_rows(const PolyMatrix& m) {
  std::vector<std::vector<Poly>> a(m.rows(), std::vector<Poly>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
  return a;
}

inline std::uint64_t binom_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (r > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(r + 0.5L);
}

// A random point of GF(p^deg)^n; a rank there is a lower bound for the
// generic rank.
inline std::size_t sampled_rank(const PolyMatrix& m, unsigned deg, std::uint64_t seed) {
  Field f(m.p(), deg);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, f.size() - 1);
  std::vector<Scalar> pt(m.nvars());
  for (auto& x : pt) x = dist(rng);
  return m.evaluate(f, pt).rank();
}

inline unsigned sampling_degree(std::uint32_t p) {
  unsigned deg = 1;
  while (std::pow(static_cast<double>(p), deg) < 1e5 && deg < 16) ++deg;
  return deg;
}

}  // namespace detail

/// Rank by fraction-free elimination alone, on the whole matrix.
inline std::size_t bareiss_rank(const PolyMatrix& m) { return detail::bareiss(detail::to_rows(m), m.p(), m.nvars()); }

/// Determinant of a square polynomial matrix.
inline Poly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  Poly d;
  detail::bareiss(detail::to_rows(m), m.p(), m.nvars(), &d);
  return d;
}

/// Rank over GF(p)(l_1, ..., l_n). The matrix is split into the connected
/// components of its nonzero pattern. A component whose rank at a sampled
/// extension-field point already equals its smaller side is full rank;
/// every other component is eliminated fraction-free.
inline std::size_t symbolic_rank(const PolyMatrix& m) {
  std::size_t total = 0;
  const unsigned deg = detail::sampling_degree(m.p());
  for (const auto& c : m.components()) {
    PolyMatrix sub = m.submatrix(c.rows, c.cols);
    const std::size_t bound = std::min(c.rows.size(), c.cols.size());
    if (m.nvars() > 0 && detail::sampled_rank(sub, deg, 0x5eed + total) == bound) {
      total += bound;
      continue;
    }
    total += detail::bareiss(detail::to_rows(sub), m.p(), m.nvars());
  }
  return total;
}

/// Generators of the ideal of size x size minors, each scaled to be monic,
/// deduplicated and sorted. Minors of the block-diagonal form are products
/// of minors of the components, so only those products are formed. Returns
/// nullopt when the estimated work (size^3 per determinant plus one unit per
/// product) exceeds `cap`.
inline std::optional<std::vector<Poly>> minors_ideal(const PolyMatrix& m, std::size_t size,
                                                     std::uint64_t cap = 4000000) {
  if (size < 1 || size > std::min(m.rows(), m.cols()))
    throw InputError("minor size " + std::to_string(size) + " out of range for a " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + " matrix");
  const std::uint32_t p = m.p();
  const unsigned nv = m.nvars();
  const auto comps = m.components();
  std::vector<PolyMatrix> subs;
  std::vector<std::size_t> ranks;
  for (const auto& c : comps) {
    subs.push_back(m.submatrix(c.rows, c.cols));
    ranks.push_back(symbolic_rank(subs.back()));
  }

  // Distributions size = sum s_c with s_c <= rank_c; enumerate and estimate cost.
  std::vector<std::vector<std::size_t>> dists;
  std::vector<std::size_t> cur(comps.size(), 0);
  std::uint64_t work = 0;
  bool too_big = false;
  auto enumerate = [&](auto&& self, std::size_t idx, std::size_t left) -> void {
    if (too_big) return;
    if (idx == comps.size()) {
      if (left) return;
      // determinants per component (cached) plus the products
      std::uint64_t cost = 1, dets = 0;
      for (std::size_t c = 0; c < comps.size(); ++c) {
        if (!cur[c]) continue;
        std::uint64_t n = detail::binom_capped(comps[c].rows.size(), cur[c], cap) *
                          detail::binom_capped(comps[c].cols.size(), cur[c], cap);
        n = std::min<std::uint64_t>(n, cap + 1);
        dets += n * cur[c] * cur[c] * cur[c];
        cost = std::min<std::uint64_t>(cap + 1, cost * std::max<std::uint64_t>(n, 1));
      }
      cost = std::min<std::uint64_t>(cap + 1, cost + dets);
      work += cost;
      if (work > cap) too_big = true;
      dists.push_back(cur);
      return;
    }
    std::size_t rest = 0;
    for (std::size_t c = idx + 1; c < comps.size(); ++c) rest += ranks[c];
    for (std::size_t s = 0; s <= std::min(ranks[idx], left); ++s) {
      if (left - s > rest) continue;
      cur[idx] = s;
      self(self, idx + 1, left - s);
    }
    cur[idx] = 0;
  };
  enumerate(enumerate, 0, size);
  if (too_big) return std::nullopt;

  // Nonzero monic minors of each component, per size, computed on demand.
  std::vector<std::vector<std::optional<std::vector<Poly>>>> cache(comps.size());
  auto component_minors = [&](std::size_t c, std::size_t s) -> const std::vector<Poly>& {
    auto& slot = cache[c];
    if (slot.size() <= s) slot.resize(s + 1);
    if (!slot[s]) {
      std::set<Poly> found;
      const std::size_t nr = comps[c].rows.size(), nc = comps[c].cols.size();
      std::vector<std::size_t> rsel(s), csel(s);
      auto first = [](std::vector<std::size_t>& v) { std::iota(v.begin(), v.end(), 0); };
      auto next = [](std::vector<std::size_t>& v, std::size_t n) {
        for (std::size_t i = v.size(); i-- > 0;) {
          if (v[i] < n - v.size() + i) {
            ++v[i];
            for (std::size_t j = i + 1; j < v.size(); ++j) v[j] = v[j - 1] + 1;
            return true;
          }
        }
        return false;
      };
      first(rsel);
      do {
        first(csel);
        do {
          Poly d = determinant(subs[c].submatrix(rsel, csel));
          if (!d.is_zero()) found.insert(d.monic());
        } while (next(csel, nc));
      } while (next(rsel, nr));
      slot[s] = std::vector<Poly>(found.begin(), found.end());
    }
    return *slot[s];
  };

  std::set<Poly> out;
  for (const auto& dist : dists) {
    std::vector<Poly> acc{Poly::constant(p, nv, 1)};
    for (std::size_t c = 0; c < comps.size() && !acc.empty(); ++c) {
      if (!dist[c]) continue;
      const auto& g = component_minors(c, dist[c]);
      std::vector<Poly> nxt;
      nxt.reserve(acc.size() * g.size());
      for (const auto& a : acc)
        for (const auto& b : g) nxt.push_back((a * b).monic());
      acc = std::move(nxt);
    }
    out.insert(acc.begin(), acc.end());
  }
  return std::vector<Poly>(out.begin(), out.end());
}

}  // namespace jstrata
