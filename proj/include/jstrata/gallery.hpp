#pragma once

// Explicit modules used as fixtures and CLI presets.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "jstrata/error.hpp"
#include "jstrata/module.hpp"

namespace jstrata {

/// The 13-dimensional module over k[x,y]/(x^p, y^p) with basis
/// t0..t3 (top), m0..m4 (middle), b0..b3 (bottom):
///   y: t_i -> m_i,      x: t_i -> m_{i+1},
///   y: m_i -> b_{i-1},  x: m_i -> b_i   (where the target exists).
inline ModuleRep w_module(std::uint32_t p) {
  if (p <= 5) throw InputError("the W-module needs p > 5");
  Field f(p);
  Matrix x(f, 13, 13), y(f, 13, 13);
  auto t = [](int i) { return static_cast<std::size_t>(i); };
  auto m = [](int i) { return static_cast<std::size_t>(4 + i); };
  auto b = [](int i) { return static_cast<std::size_t>(9 + i); };
  for (int i = 0; i < 4; ++i) {
    y(m(i), t(i)) = 1;
    x(m(i + 1), t(i)) = 1;
  }
  for (int i = 0; i < 5; ++i) {
    if (i >= 1) y(b(i - 1), m(i)) = 1;
    if (i <= 3) x(b(i), m(i)) = 1;
  }
  return ModuleRep(GroupData::additive(p, 2), f, 13, {x, y}, "w-module");
}

/// kE/(x - y^2): y acts as the shift on k[y]/y^p and x as y^2.
inline ModuleRep cyclic_quotient(std::uint32_t p) {
  if (p % 2 == 0) throw InputError("the cyclic quotient needs odd p");
  Field f(p);
  Matrix y(f, p, p);
  for (std::size_t a = 0; a + 1 < p; ++a) y(a + 1, a) = 1;
  return ModuleRep(GroupData::elementary_abelian(p, 2), f, p, {y * y, y}, "cyclic-quotient");
}

/// Sym^2 of a 3x3 matrix on the basis e1^2, e1e2, e1e3, e2^2, e2e3, e3^2.
inline Matrix sym2(const Matrix& u) {
  const Field& f = u.field();
  std::vector<std::pair<std::size_t, std::size_t>> basis;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a; b < 3; ++b) basis.emplace_back(a, b);
  auto index = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (basis[k] == std::make_pair(a, b)) return k;
    return basis.size();
  };
  Matrix s(f, 6, 6);
  for (std::size_t col = 0; col < 6; ++col) {
    const auto [a, b] = basis[col];
    // (u e_a)(u e_b) = sum_{i,j} u_ia u_jb e_i e_j
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const Scalar c = f.mul(u(i, a), u(j, b));
        if (c) s(index(i, j), col) = f.add(s(index(i, j), col), c);
      }
  }
  return s;
}

/// Sym^2 of the standard GL_3 representation restricted to one of three
/// rank-2 elementary abelian subgroups of unipotent matrices.
inline ModuleRep gl3_sym2(std::uint32_t p, int subgroup) {
  if (p <= 3) throw InputError("gl3-sym2 needs p > 3");
  Field f(p);
  auto unit = [&](std::size_t i, std::size_t j) {
    Matrix e(f, 3, 3);
    e(i - 1, j - 1) = 1;
    return e;
  };
  const Matrix id = Matrix::identity(f, 3);
  Matrix u1, u2;
  switch (subgroup) {
    case 1: u1 = id + unit(1, 2) + unit(2, 3); u2 = id + unit(1, 3); break;
    case 2: u1 = id + unit(1, 2); u2 = id + unit(1, 3); break;
    case 3: u1 = id + unit(2, 3); u2 = id + unit(1, 3); break;
    default: throw InputError("subgroup must be 1, 2 or 3");
  }
  const Matrix id6 = Matrix::identity(f, 6);
  return ModuleRep(GroupData::elementary_abelian(p, 2), f, 6, {sym2(u1) - id6, sym2(u2) - id6},
                   "gl3-sym2-" + std::to_string(subgroup));
}

/// The standard N-dimensional module with the single p-nilpotent operator X.
inline ModuleRep gln1_standard(std::uint32_t p, const Matrix& x) {
  if (!x.square()) throw InputError("X must be square");
  if (!x.pow(p).is_zero()) throw MathError("not-nilpotent", "X is not p-nilpotent");
  return ModuleRep(GroupData::make(Family::gl_restricted, p, 1), x.field(), x.rows(), {x}, "gln1-standard");
}

inline PiPoint gln1_point(std::uint32_t p) {
  return PiPoint::linear(GroupData::make(Family::gl_restricted, p, 1), Field(p), {1});
}

/// Block-diagonal nilpotent matrix of a given Jordan type.
inline Matrix nilpotent_of_type(const Field& f, const JordanType& a) {
  Matrix m(f, 0, 0);
  for (std::size_t s : a.parts()) m = Matrix::block_diag(m, Matrix::jordan_block(f, s));
  return m;
}

/// Raising operator e on Sym^mu of the standard representation, basis x^a y^(mu-a):
/// e x^a y^b = b x^(a+1) y^(b-1).
inline Matrix raising_operator(const Field& f, std::size_t mu) {
  Matrix e(f, mu + 1, mu + 1);
  for (std::size_t a = 0; a < mu; ++a) e(a + 1, a) = f.from_int(static_cast<long long>(mu - a));
  return e;
}

/// Simple module L(lambda) = L(l0) (x) L(l1)^(1) for lambda = l0 + p l1, with
/// generators A = e (x) 1 and B = 1 (x) e.
inline ModuleRep sl2_2_simple(std::uint32_t lambda, std::uint32_t p) {
  if (lambda >= p * p) throw InputError("lambda must lie in 0..p^2-1");
  Field f(p);
  const std::size_t l0 = lambda % p, l1 = lambda / p;
  Matrix e0 = raising_operator(f, l0), e1 = raising_operator(f, l1);
  Matrix a = e0.kron(Matrix::identity(f, l1 + 1));
  Matrix b = Matrix::identity(f, l0 + 1).kron(e1);
  return ModuleRep(GroupData::make(Family::sl2_frobenius, p, 2), f, (l0 + 1) * (l1 + 1), {a, b},
                   "sl2-simple-" + std::to_string(lambda));
}

/// Omega^n(k) for the rank-two elementary abelian group.
inline ModuleRep heller_of_trivial(int n, unsigned r, std::uint32_t p) {
  if (r != 2) throw InputError("heller-trivial is built for r = 2");
  if (n < -3 || n > 3) throw InputError("heller-trivial supports |n| <= 3");
  GroupData g = GroupData::elementary_abelian(p, r);
  return heller(trivial_module(g, Field(p)), n).named("heller-trivial-" + std::to_string(n));
}

struct GalleryParams {
  std::uint32_t p = 7;
  std::uint32_t lambda = 0;
  int subgroup = 1;
  int n = 1;
  std::string type;  // Jordan type of X for gln1-standard
};

struct GalleryEntry {
  std::string name;
  std::string description;
  std::string parameters;
  std::function<ModuleRep(const GalleryParams&)> build;
};

inline const std::vector<GalleryEntry>& gallery_entries() {
  static const std::vector<GalleryEntry> entries = {
      {"w-module", "13-dimensional module of constant rank, generic type 4[3]+[1]", "--p (> 5)",
       [](const GalleryParams& g) { return w_module(g.p); }},
      {"w-tensor-w", "tensor square of the W-module", "--p (> 5)",
       [](const GalleryParams& g) {
         ModuleRep w = w_module(g.p);
         return tensor_module(w, w).named("w-tensor-w");
       }},
      {"cyclic-quotient", "kE/(x - y^2) for E of rank 2", "--p (odd)",
       [](const GalleryParams& g) { return cyclic_quotient(g.p); }},
      {"gl3-sym2", "Sym^2 of the standard GL_3 module on an elementary abelian subgroup",
       "--p (> 3) --subgroup 1|2|3", [](const GalleryParams& g) { return gl3_sym2(g.p, g.subgroup); }},
      {"gln1-standard", "standard module of the first Frobenius kernel of GL_N with operator X",
       "--p --type (Jordan type of X)",
       [](const GalleryParams& g) {
         if (g.type.empty()) throw InputError("gln1-standard needs --type");
         Field f(g.p);
         return gln1_standard(g.p, nilpotent_of_type(f, JordanType::parse(g.type, g.p)));
       }},
      {"sl2-simple", "simple module L(lambda) for the second Frobenius kernel of SL_2", "--p --lambda",
       [](const GalleryParams& g) { return sl2_2_simple(g.lambda, g.p); }},
      {"heller-trivial", "Heller shift Omega^n(k) for the rank-2 elementary abelian group", "--p --n (|n| <= 3)",
       [](const GalleryParams& g) { return heller_of_trivial(g.n, 2, g.p); }},
  };
  return entries;
}

inline ModuleRep gallery_build(const std::string& name, const GalleryParams& params) {
  for (const auto& e : gallery_entries())
    if (e.name == name) return e.build(params);
  throw InputError("unknown gallery entry \"" + name + "\"");
}

}  // namespace jstrata
