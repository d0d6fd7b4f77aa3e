#pragma once

// Ext classes as homomorphisms out of Heller shifts, extension and Carlson
// modules, and zero loci of classes over a pi-point family.

#include <optional>
#include <string>
#include <vector>

#include "jstrata/error.hpp"
#include "jstrata/module.hpp"
#include "jstrata/strata.hpp"

namespace jstrata {

/// A class in Ext^n(Q, M) = Hom(Omega^n Q, M) / PHom.
struct CohomClass {
  int degree = 1;
  ModuleRep base;        // Q
  ModuleRep cover_base;  // Omega^{n-1} Q
  ModuleRep source;      // Omega^n Q, the kernel of the free cover of cover_base
  Matrix inclusion;      // Omega^n Q -> A^s
  std::size_t cover_rank = 0;
  ModuleRep target;      // M
  Matrix hom;            // Omega^n Q -> M

  bool is_zero() const { return hom.is_zero(); }
};

/// Basis of Hom_A(S, T) as matrices dim T x dim S.
inline std::vector<Matrix> hom_basis(const ModuleRep& s, const ModuleRep& t) {
  check_same_group(s, t);
  const Field& k = s.field();
  const std::size_t ds = s.dim(), dt = t.dim();
  const Matrix is = Matrix::identity(k, ds), it = Matrix::identity(k, dt);
  // vec(T_i F - F S_i) = (I (x) T_i - S_i^T (x) I) vec(F), vec column-major
  Matrix system(k, 0, ds * dt);
  for (unsigned i = 0; i < s.r(); ++i)
    system = system.vstack(is.kron(t.generator(i)) - s.generator(i).transpose().kron(it));
  std::vector<Matrix> out;
  for (const auto& v : system.kernel_basis()) {
    Matrix f(k, dt, ds);
    for (std::size_t c = 0; c < ds; ++c)
      for (std::size_t r = 0; r < dt; ++r) f(r, c) = v[c * dt + r];
    out.push_back(std::move(f));
  }
  return out;
}

inline bool is_homomorphism(const Matrix& f, const ModuleRep& s, const ModuleRep& t) {
  if (f.rows() != t.dim() || f.cols() != s.dim()) return false;
  for (unsigned i = 0; i < s.r(); ++i)
    if (t.generator(i) * f != f * s.generator(i)) return false;
  return true;
}

namespace detail {

inline Matrix vectorize(const Matrix& f) {
  Matrix v(f.field(), f.rows() * f.cols(), 1);
  for (std::size_t c = 0; c < f.cols(); ++c)
    for (std::size_t r = 0; r < f.rows(); ++r) v(c * f.rows() + r, 0) = f(r, c);
  return v;
}

// Maps Omega -> M that extend over the free cover: Phi_{t,m} o iota, where
// Phi_{t,m} sends the t-th free generator to m.
inline Matrix projective_homs(const HellerShift& hs, const ModuleRep& m) {
  const GroupData& g = m.group();
  const Field& k = m.field();
  const std::size_t pr = hs.cover.dim() / std::max<std::size_t>(hs.cover_rank, 1);
  std::vector<std::vector<Matrix>> powers(g.r);
  for (unsigned i = 0; i < g.r; ++i) {
    powers[i].push_back(Matrix::identity(k, m.dim()));
    for (unsigned e = 1; e < g.p; ++e) powers[i].push_back(powers[i].back() * m.generator(i));
  }
  std::vector<Matrix> monos(pr);
  for (std::size_t b = 0; b < pr; ++b) {
    std::size_t rest = b;
    std::vector<unsigned> e(g.r);
    for (unsigned i = g.r; i-- > 0;) {
      e[i] = static_cast<unsigned>(rest % g.p);
      rest /= g.p;
    }
    Matrix mono = Matrix::identity(k, m.dim());
    for (unsigned i = 0; i < g.r; ++i)
      if (e[i]) mono = mono * powers[i][e[i]];
    monos[b] = mono;
  }
  Matrix span(k, m.dim() * hs.module.dim(), 0);
  for (std::size_t t = 0; t < hs.cover_rank; ++t)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      Matrix phi(k, m.dim(), hs.cover.dim());
      for (std::size_t b = 0; b < pr; ++b)
        for (std::size_t row = 0; row < m.dim(); ++row) phi(row, t * pr + b) = monos[b](row, j);
      span = span.hstack(vectorize(phi * hs.inclusion));
    }
  return span;
}

}  // namespace detail

/// Basis of Ext^n(Q, M), n >= 1, as homomorphisms Omega^n Q -> M that are
/// independent modulo those factoring through the free cover.
inline std::vector<CohomClass> ext_basis(const ModuleRep& q, int n, const ModuleRep& m) {
  if (n < 1) throw InputError("Ext degree must be at least 1");
  check_same_group(q, m);
  require_self_injective(q);
  const ModuleRep cover_base = heller(q, n - 1);
  const HellerShift hs = omega_with_inclusion(cover_base);
  const auto homs = hom_basis(hs.module, m);
  const Matrix phom = detail::projective_homs(hs, m);
  Matrix all = phom;
  for (const auto& h : homs) all = all.hstack(detail::vectorize(h));
  std::vector<CohomClass> out;
  for (auto c : all.independent_columns()) {
    if (c < phom.cols()) continue;
    out.push_back({n, q, cover_base, hs.module, hs.inclusion, hs.cover_rank, m, homs[c - phom.cols()]});
  }
  return out;
}

inline std::vector<CohomClass> ext1_basis(const ModuleRep& m) {
  return ext_basis(trivial_module(m.group(), m.field()), 1, m);
}

/// A class Omega(k) -> k^s given by rows of coefficients: row i sends b to
/// sum_j c_ij * (coefficient of x_j in b), b in rad A.
inline CohomClass h1_class(const GroupData& g, const Field& k, const std::vector<std::vector<Scalar>>& rows) {
  if (rows.empty()) throw InputError("a class needs at least one row");
  const ModuleRep triv = trivial_module(g, k);
  const HellerShift hs = omega_with_inclusion(triv);
  ModuleRep target = triv;
  for (std::size_t i = 1; i < rows.size(); ++i) target = direct_sum(target, triv);
  target = target.named(rows.size() == 1 ? "k" : "k^" + std::to_string(rows.size()));
  Matrix hom(k, rows.size(), hs.module.dim());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != g.r) throw InputError("class coefficients must have length r");
    for (unsigned j = 0; j < g.r; ++j) {
      std::vector<unsigned> e(g.r, 0);
      e[j] = 1;
      const std::size_t idx = monomial_index(g, e);
      for (std::size_t c = 0; c < hs.module.dim(); ++c)
        hom(i, c) = k.add(hom(i, c), k.mul(rows[i][j], hs.inclusion(idx, c)));
    }
  }
  return {1, triv, triv, hs.module, hs.inclusion, hs.cover_rank, target, hom};
}

inline CohomClass h1_trivial_class(const GroupData& g, const Field& k, const std::vector<Scalar>& coeffs) {
  return h1_class(g, k, {coeffs});
}

/// The class with the same source and a new hom.
inline CohomClass with_hom(const CohomClass& z, const ModuleRep& target, const Matrix& hom) {
  CohomClass out = z;
  out.target = target;
  out.hom = hom;
  return out;
}

/// Sum of classes with a common source into the direct sum of targets.
inline CohomClass direct_sum_class(const std::vector<CohomClass>& zs) {
  if (zs.empty()) throw InputError("empty class list");
  CohomClass out = zs.front();
  for (std::size_t i = 1; i < zs.size(); ++i) {
    if (zs[i].source.dim() != out.source.dim() || zs[i].inclusion != out.inclusion)
      throw InputError("classes do not share a source");
    out.target = direct_sum(out.target, zs[i].target);
    out.hom = out.hom.vstack(zs[i].hom);
  }
  return out;
}

/// Pushout of Omega^n Q -> A^s along the class: an extension
/// 0 -> M -> E -> Omega^{n-1} Q -> 0 with M on the first dim M coordinates.
inline ModuleRep extension_module(const CohomClass& z) {
  if (!is_homomorphism(z.hom, z.source, z.target))
    throw MathError("not-a-homomorphism", "class map does not intertwine the generator actions");
  const ModuleRep cover = free_module(z.target.group(), z.target.field(), z.cover_rank);
  const Matrix rel = z.hom.vstack(-z.inclusion);
  ModuleRep e = quotient_module(direct_sum(z.target, cover), rel);
  const std::string tn = z.target.name().empty() ? "M" : z.target.name();
  return e.named("E(" + tn + ")");
}

/// Kernel of a nonzero map Omega^{2n} k -> k.
inline ModuleRep carlson_module(const CohomClass& z) {
  if (z.degree % 2 != 0) throw InputError("Carlson modules need an even-degree class");
  if (z.target.dim() != 1 || z.base.dim() != 1) throw InputError("Carlson modules need a class from k to k");
  if (z.is_zero()) throw MathError("zero-class", "the class is zero; its kernel is not a Carlson module");
  return submodule(z.source, z.hom.kernel_matrix()).named("L(zeta)");
}

/// For an extension 0 -> M -> E -> k -> 0 with M on the first coordinates:
/// its restriction along the pi-point splits iff theta e lies in theta(M)
/// for the lift e of the top vector.
inline bool splits_at(const ModuleRep& e, std::size_t m_dim, const PiPoint& a) {
  if (e.dim() != m_dim + 1) throw InputError("splitting test needs a one-dimensional quotient");
  const Matrix t = theta(e, a);
  std::vector<std::size_t> all(e.dim()), mcols(m_dim);
  for (std::size_t i = 0; i < e.dim(); ++i) all[i] = i;
  for (std::size_t i = 0; i < m_dim; ++i) mcols[i] = i;
  const Matrix tm = t.submatrix(all, mcols);
  return tm.rank() == tm.hstack(t.submatrix(all, {m_dim})).rank();
}

namespace detail {

inline std::size_t theta_rank(const ModuleRep& m, const PiPoint& a) { return theta(m, a).rank(); }

}  // namespace detail

/// Points where the degree-one class pulls back to zero, decided by
/// rank(theta on E) = rank(theta on M). M must have constant rank.
inline std::vector<Point> z_locus(const CohomClass& z, const PiFamily& f, const StrataOptions& opt = {}) {
  if (z.degree != 1 || z.base.dim() != 1)
    throw InputError("zero loci are defined for classes in Ext^1(k, M); use ext_z_locus otherwise");
  if (!is_constant_jrank(z.target, f, 1, opt))
    throw MathError("non-constant-rank", "target module is not of constant rank over the family, "
                                         "so the zero locus is not well defined");
  const ModuleRep e = extension_module(z);
  std::vector<Point> out;
  for (const auto& v : f.points()) {
    const PiPoint a = f.at(v);
    if (detail::theta_rank(e, a) == detail::theta_rank(z.target, a)) out.push_back(v);
  }
  return out;
}

/// Split at every enumerated point and at the generic point.
inline bool is_locally_split(const CohomClass& z, const PiFamily& f, const StrataOptions& opt = {}) {
  if (z_locus(z, f, opt).size() != f.points().size()) return false;
  const ModuleRep e = extension_module(z);
  return symbolic_jranks(e, f)[0] == symbolic_jranks(z.target, f)[0];
}

/// Zero locus of xi in Ext^n(N, M): points where the extension
/// 0 -> M -> E -> Omega^{n-1} N -> 0 has the split Jordan type.
inline std::vector<Point> ext_z_locus(const CohomClass& xi, const PiFamily& f, const StrataOptions& opt = {}) {
  if (!is_constant_jtype(xi.base, f, opt))
    throw MathError("non-constant-type", "the base module is not of constant Jordan type over the family");
  if (!is_constant_jtype(xi.target, f, opt))
    throw MathError("non-constant-type", "the target module is not of constant Jordan type over the family");
  const ModuleRep e = extension_module(xi);
  std::vector<Point> out;
  for (const auto& v : f.points()) {
    const PiPoint a = f.at(v);
    if (jtype_at(e, a) == jtype_at(xi.target, a) + jtype_at(xi.cover_base, a)) out.push_back(v);
  }
  return out;
}

}  // namespace jstrata
