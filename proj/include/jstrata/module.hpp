#pragma once

// Modules over the group algebras of the implemented families, given by the
// actions of r commuting p-nilpotent generators, together with pi-points and
// the functors direct sum, dual, tensor product and Heller shifts.

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jstrata/error.hpp"
#include "jstrata/field.hpp"
#include "jstrata/jordan.hpp"
#include "jstrata/matrix.hpp"
#include "jstrata/poly.hpp"

namespace jstrata {

enum class Family { elementary_abelian, additive_infinitesimal, gl_restricted, sl2_frobenius };
enum class Hopf { additive, multiplicative };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::elementary_abelian: return "elementary-abelian";
    case Family::additive_infinitesimal: return "additive-infinitesimal";
    case Family::gl_restricted: return "gl_n-restricted";
    default: return "sl2-second-frobenius";
  }
}

inline Family parse_family(const std::string& s) {
  if (s == "elementary-abelian") return Family::elementary_abelian;
  if (s == "additive-infinitesimal") return Family::additive_infinitesimal;
  if (s == "gl_n-restricted") return Family::gl_restricted;
  if (s == "sl2-second-frobenius") return Family::sl2_frobenius;
  throw InputError("unknown group family \"" + s + "\"");
}

inline std::string hopf_name(Hopf h) { return h == Hopf::additive ? "additive" : "multiplicative"; }
inline Hopf parse_hopf(const std::string& s) {
  if (s == "additive") return Hopf::additive;
  if (s == "multiplicative") return Hopf::multiplicative;
  throw InputError("unknown Hopf structure \"" + s + "\"");
}

/// A group family with r algebra generators x_1..x_r. The algebra generated
/// is k[x_1, ..., x_r]/(x_i^p) in every implemented case.
struct GroupData {
  Family family = Family::additive_infinitesimal;
  std::uint32_t p = 2;
  unsigned r = 1;
  Hopf hopf = Hopf::additive;

  static GroupData make(Family family, std::uint32_t p, unsigned r) {
    if (!detail::is_prime(p)) throw InputError("p must be prime");
    if (r < 1) throw InputError("a group needs at least one generator");
    if (family == Family::gl_restricted && r != 1) throw InputError("gl_n-restricted family has one generator");
    if (family == Family::sl2_frobenius && r != 2) throw InputError("sl2-second-frobenius family has two generators");
    GroupData g{family, p, r, family == Family::elementary_abelian ? Hopf::multiplicative : Hopf::additive};
    return g;
  }
  static GroupData elementary_abelian(std::uint32_t p, unsigned r) { return make(Family::elementary_abelian, p, r); }
  static GroupData additive(std::uint32_t p, unsigned r) { return make(Family::additive_infinitesimal, p, r); }

  GroupData with_hopf(Hopf h) const {
    GroupData g = *this;
    g.hopf = h;
    return g;
  }
  bool local_self_injective() const {
    return family == Family::elementary_abelian || family == Family::additive_infinitesimal;
  }
  friend bool operator==(const GroupData& a, const GroupData& b) {
    return a.family == b.family && a.p == b.p && a.r == b.r && a.hopf == b.hopf;
  }
  friend bool operator!=(const GroupData& a, const GroupData& b) { return !(a == b); }
};

struct Validation {
  bool ok = true;
  std::string message;
};

class ModuleRep {
 public:
  ModuleRep() = default;
  ModuleRep(GroupData group, Field field, std::size_t dim, std::vector<Matrix> gens, std::string name = "")
      : group_(group), field_(std::move(field)), dim_(dim), gens_(std::move(gens)), name_(std::move(name)) {
    if (field_.p() != group_.p) throw InputError("module field characteristic differs from the group's p");
    if (gens_.size() != group_.r)
      throw InputError("expected " + std::to_string(group_.r) + " generators, got " + std::to_string(gens_.size()));
    for (auto& g : gens_) {
      if (g.rows() != dim_ || g.cols() != dim_) throw InputError("generator matrices must be " + std::to_string(dim_) + "x" + std::to_string(dim_));
      if (g.field() != field_) g = g.lifted(field_);
    }
  }

  const GroupData& group() const { return group_; }
  const Field& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  unsigned r() const { return group_.r; }
  std::uint32_t p() const { return group_.p; }
  const std::vector<Matrix>& generators() const { return gens_; }
  const Matrix& generator(std::size_t i) const { return gens_.at(i); }
  const std::string& name() const { return name_; }
  ModuleRep named(std::string n) const {
    ModuleRep m = *this;
    m.name_ = std::move(n);
    return m;
  }

  /// Commutativity and p-nilpotence of all generators.
  Validation validate() const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = i + 1; j < gens_.size(); ++j)
        if (gens_[i] * gens_[j] != gens_[j] * gens_[i])
          return {false, "generators " + std::to_string(i) + "," + std::to_string(j) + " do not commute"};
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (!gens_[i].pow(group_.p).is_zero())
        return {false, "generator " + std::to_string(i) + " is not p-nilpotent (X^" + std::to_string(group_.p) + " != 0)"};
    return {};
  }

  friend bool operator==(const ModuleRep& a, const ModuleRep& b) {
    return a.group_ == b.group_ && a.field_ == b.field_ && a.dim_ == b.dim_ && a.gens_ == b.gens_;
  }

 private:
  GroupData group_;
  Field field_;
  std::size_t dim_ = 0;
  std::vector<Matrix> gens_;
  std::string name_;
};

/// A pi-point t -> sum_k c_k x^{e_k} with coefficients in the field K.
class PiPoint {
 public:
  struct Term {
    std::vector<unsigned> exps;
    Scalar coeff;
  };

  PiPoint() = default;

  static PiPoint linear(const GroupData& g, const Field& k, const std::vector<Scalar>& coeffs) {
    if (coeffs.size() != g.r) throw InputError("pi-point needs " + std::to_string(g.r) + " coefficients");
    std::vector<Term> terms;
    for (unsigned i = 0; i < g.r; ++i) {
      if (!coeffs[i]) continue;
      std::vector<unsigned> e(g.r, 0);
      e[i] = 1;
      terms.push_back({e, coeffs[i]});
    }
    return PiPoint(g, k, std::move(terms));
  }

  /// From a polynomial over GF(p) in the generators x_0..x_{r-1}.
  static PiPoint from_poly(const GroupData& g, const Field& k, const Poly& image) {
    if (image.nvars() != g.r) throw InputError("pi-point polynomial has the wrong number of variables");
    std::vector<Term> terms;
    for (const auto& t : image.terms()) {
      std::vector<unsigned> e(g.r);
      for (unsigned i = 0; i < g.r; ++i) e[i] = Poly::lane(t.mono, i);
      terms.push_back({e, t.coeff});
    }
    return PiPoint(g, k, std::move(terms));
  }

  PiPoint(const GroupData& g, const Field& k, std::vector<Term> terms) : group_(g), field_(k), terms_(std::move(terms)) {
    if (k.p() != g.p) throw InputError("pi-point field has the wrong characteristic");
    for (auto& t : terms_) {
      if (t.exps.size() != g.r) throw InputError("pi-point monomial has the wrong number of exponents");
      bool constant = true;
      for (auto e : t.exps) constant = constant && e == 0;
      if (constant && t.coeff) throw InputError("pi-point image must have zero constant term");
    }
    flat_ = compute_flat();
  }

  const GroupData& group() const { return group_; }
  const Field& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool flat() const { return flat_; }

  /// The image evaluated on generator matrices (already over K).
  Matrix apply(const std::vector<Matrix>& gens, std::size_t dim) const {
    Matrix out(field_, dim, dim);
    std::vector<std::map<unsigned, Matrix>> powers(gens.size());
    auto power = [&](unsigned i, unsigned e) -> const Matrix& {
      auto it = powers[i].find(e);
      if (it != powers[i].end()) return it->second;
      return powers[i].emplace(e, gens[i].pow(e)).first->second;
    };
    for (const auto& t : terms_) {
      if (!t.coeff) continue;
      Matrix mono = Matrix::identity(field_, dim);
      for (unsigned i = 0; i < gens.size(); ++i)
        if (t.exps[i]) mono = mono * power(i, t.exps[i]);
      out = out + mono.scaled(t.coeff);
    }
    return out;
  }

 private:
  bool compute_flat() const;

  GroupData group_;
  Field field_;
  std::vector<Term> terms_;
  bool flat_ = false;
};

/// Regular representation of k[x_1..x_r]/(x_i^p) on the monomial basis
/// x^e, e in [0,p)^r, with e_1 most significant.
inline std::vector<Matrix> regular_generators(const GroupData& g, const Field& k) {
  std::size_t n = 1;
  for (unsigned i = 0; i < g.r; ++i) n *= g.p;
  std::vector<Matrix> gens;
  for (unsigned i = 0; i < g.r; ++i) {
    std::size_t stride = 1;
    for (unsigned j = i + 1; j < g.r; ++j) stride *= g.p;
    Matrix x(k, n, n);
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t e = (b / stride) % g.p;
      if (e + 1 < g.p) x(b + stride, b) = 1;
    }
    gens.push_back(std::move(x));
  }
  return gens;
}

/// Index of the monomial x^e in the regular basis.
inline std::size_t monomial_index(const GroupData& g, const std::vector<unsigned>& e) {
  std::size_t idx = 0;
  for (unsigned i = 0; i < g.r; ++i) idx = idx * g.p + e[i];
  return idx;
}

inline ModuleRep regular_module(const GroupData& g, const Field& k) {
  std::size_t n = 1;
  for (unsigned i = 0; i < g.r; ++i) n *= g.p;
  return ModuleRep(g, k, n, regular_generators(g, k), "regular");
}

inline ModuleRep free_module(const GroupData& g, const Field& k, std::size_t rank);

inline bool PiPoint::compute_flat() const {
  if (terms_.empty()) return false;
  const auto gens = regular_generators(group_, field_);
  const std::size_t n = gens.front().rows();
  Matrix theta = apply(gens, n);
  // free over K[t]/t^p iff rank of theta^{p-1} is n/p
  return theta.pow(group_.p - 1).rank() == n / group_.p;
}

inline bool is_flat(const PiPoint& a, const GroupData& g) {
  if (a.group() == g) return a.flat();
  return PiPoint(g, a.field(), a.terms()).flat();
}

inline ModuleRep trivial_module(const GroupData& g, const Field& k) {
  std::vector<Matrix> gens(g.r, Matrix(k, 1, 1));
  return ModuleRep(g, k, 1, gens, "k");
}

inline ModuleRep free_module(const GroupData& g, const Field& k, std::size_t rank) {
  auto reg = regular_generators(g, k);
  std::vector<Matrix> gens;
  for (auto& x : reg) {
    Matrix acc(k, 0, 0);
    for (std::size_t i = 0; i < rank; ++i) acc = Matrix::block_diag(acc, x);
    gens.push_back(acc);
  }
  return ModuleRep(g, k, reg.front().rows() * rank, gens, "free");
}

/// theta for the module at the pi-point, over the larger of the two fields.
inline Matrix theta(const ModuleRep& m, const PiPoint& a) {
  if (a.group().r != m.r() || a.field().p() != m.p()) throw InputError("pi-point does not match the module's group");
  const Field& k = a.field();
  if (m.field() == k || m.field().is_prime_field()) {
    std::vector<Matrix> gens;
    for (const auto& g : m.generators()) gens.push_back(g.lifted(k));
    return a.apply(gens, m.dim());
  }
  if (!k.is_prime_field()) throw InputError("cannot combine fields " + m.field().name() + " and " + k.name());
  return PiPoint(a.group(), m.field(), a.terms()).apply(m.generators(), m.dim());
}

inline std::vector<std::size_t> rank_chain_of(const Matrix& t, std::uint32_t p) {
  std::vector<std::size_t> ranks;
  Matrix power = t;
  for (std::uint32_t j = 1; j <= p; ++j) {
    const std::size_t rk = power.rank();
    ranks.push_back(rk);
    if (rk == 0) {
      ranks.resize(p, 0);
      break;
    }
    if (j < p) power = power * t;
  }
  return ranks;
}

inline JordanType jtype_at(const ModuleRep& m, const PiPoint& a) {
  if (!a.flat()) throw MathError("non-flat", "pi-point is not flat");
  Matrix t = theta(m, a);
  auto ranks = rank_chain_of(t, m.p());
  if (ranks.back() != 0) throw MathError("not-nilpotent", "theta is not p-nilpotent; the module is invalid");
  return JordanType::from_rank_chain(m.p(), m.dim(), ranks);
}

inline void check_same_group(const ModuleRep& m, const ModuleRep& n) {
  if (m.group() != n.group() || m.field() != n.field()) throw InputError("modules over different groups or fields");
}

inline ModuleRep direct_sum(const ModuleRep& m, const ModuleRep& n) {
  check_same_group(m, n);
  std::vector<Matrix> gens;
  for (unsigned i = 0; i < m.r(); ++i) gens.push_back(Matrix::block_diag(m.generator(i), n.generator(i)));
  return ModuleRep(m.group(), m.field(), m.dim() + n.dim(), gens);
}

inline ModuleRep dual(const ModuleRep& m) {
  std::vector<Matrix> gens;
  const Matrix id = Matrix::identity(m.field(), m.dim());
  for (const auto& x : m.generators()) {
    if (m.group().hopf == Hopf::additive)
      gens.push_back((-x).transpose());
    else
      gens.push_back(((id + x).inverse() - id).transpose());
  }
  return ModuleRep(m.group(), m.field(), m.dim(), gens);
}

inline ModuleRep tensor_module(const ModuleRep& m, const ModuleRep& n) {
  check_same_group(m, n);
  std::vector<Matrix> gens;
  const Matrix im = Matrix::identity(m.field(), m.dim()), in = Matrix::identity(n.field(), n.dim());
  for (unsigned i = 0; i < m.r(); ++i) {
    const Matrix& x = m.generator(i);
    const Matrix& y = n.generator(i);
    if (m.group().hopf == Hopf::additive)
      gens.push_back(x.kron(in) + im.kron(y));
    else
      gens.push_back((im + x).kron(in + y) - im.kron(in));
  }
  return ModuleRep(m.group(), m.field(), m.dim() * n.dim(), gens);
}

/// Submodule spanned by the columns of `basis` (assumed invariant and
/// independent), with actions in that basis.
inline ModuleRep submodule(const ModuleRep& m, const Matrix& basis) {
  std::vector<Matrix> gens;
  for (const auto& x : m.generators()) gens.push_back(basis.solve(x * basis));
  return ModuleRep(m.group(), m.field(), basis.cols(), gens);
}

/// Quotient of m by the invariant subspace spanned by the columns of `sub`.
/// The quotient basis is the set of standard vectors completing a basis of
/// `sub`, taken greedily in index order; `complement` receives them.
inline ModuleRep quotient_module(const ModuleRep& m, const Matrix& sub, Matrix* complement = nullptr) {
  const Field& k = m.field();
  const std::size_t n = m.dim();
  Matrix all = sub.hstack(Matrix::identity(k, n));
  const auto piv = all.independent_columns();
  std::vector<std::size_t> chosen;
  for (auto c : piv)
    if (c >= sub.cols()) chosen.push_back(c - sub.cols());
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  const Matrix c = Matrix::identity(k, n).submatrix(rows, chosen);
  const Matrix sub_basis = sub.column_space();
  const Matrix full = c.hstack(sub_basis);
  std::vector<Matrix> gens;
  std::vector<std::size_t> top(chosen.size());
  for (std::size_t i = 0; i < top.size(); ++i) top[i] = i;
  std::vector<std::size_t> cols_all(chosen.size());
  for (std::size_t i = 0; i < cols_all.size(); ++i) cols_all[i] = i;
  for (const auto& x : m.generators()) {
    Matrix coords = full.solve(x * c);
    gens.push_back(coords.submatrix(top, cols_all));
  }
  if (complement) *complement = c;
  return ModuleRep(m.group(), k, chosen.size(), gens);
}

/// Heller shift with its embedding into the free cover A^s.
struct HellerShift {
  ModuleRep module;     // Omega(M)
  Matrix inclusion;     // columns span Omega(M) inside A^s
  std::size_t cover_rank = 0;
  ModuleRep cover;      // A^s
  Matrix cover_map;     // A^s -> M
};

inline void require_self_injective(const ModuleRep& m) {
  if (!m.group().local_self_injective())
    throw MathError("unsupported-family", "Heller shifts are implemented for elementary-abelian and "
                                          "additive-infinitesimal families only, not " +
                                              family_name(m.group().family));
}

/// Basis of the radical sum_i im X_i.
inline Matrix radical_basis(const ModuleRep& m) {
  Matrix all(m.field(), m.dim(), 0);
  for (const auto& x : m.generators()) all = all.hstack(x);
  return all.column_space();
}

/// Kernel of the minimal free cover A^s -> M, s = dim M / rad M.
inline HellerShift omega_with_inclusion(const ModuleRep& m) {
  require_self_injective(m);
  const Field& k = m.field();
  const GroupData& g = m.group();
  const Matrix rad = radical_basis(m);
  // generators of M/rad M: standard vectors completing rad
  Matrix all = rad.hstack(Matrix::identity(k, m.dim()));
  std::vector<std::size_t> tops;
  for (auto c : all.independent_columns())
    if (c >= rad.cols()) tops.push_back(c - rad.cols());
  const std::size_t s = tops.size();
  std::size_t pr = 1;
  for (unsigned i = 0; i < g.r; ++i) pr *= g.p;

  // cover map: basis vector (t, x^e) -> x^e m_t
  Matrix phi(k, m.dim(), s * pr);
  std::vector<std::vector<Matrix>> powers(g.r);
  for (unsigned i = 0; i < g.r; ++i) {
    powers[i].push_back(Matrix::identity(k, m.dim()));
    for (unsigned e = 1; e < g.p; ++e) powers[i].push_back(powers[i].back() * m.generator(i));
  }
  for (std::size_t b = 0; b < pr; ++b) {
    std::vector<unsigned> e(g.r);
    std::size_t rest = b;
    for (unsigned i = g.r; i-- > 0;) {
      e[i] = static_cast<unsigned>(rest % g.p);
      rest /= g.p;
    }
    Matrix mono = Matrix::identity(k, m.dim());
    for (unsigned i = 0; i < g.r; ++i)
      if (e[i]) mono = mono * powers[i][e[i]];
    for (std::size_t t = 0; t < s; ++t)
      for (std::size_t row = 0; row < m.dim(); ++row) phi(row, t * pr + b) = mono(row, tops[t]);
  }
  ModuleRep cover = free_module(g, k, s);
  Matrix ker = phi.kernel_matrix();
  ModuleRep om = submodule(cover, ker);
  return {om, ker, s, cover, phi};
}

inline ModuleRep omega(const ModuleRep& m) { return omega_with_inclusion(m).module; }

inline ModuleRep omega_inverse(const ModuleRep& m) {
  require_self_injective(m);
  return dual(omega(dual(m)));
}

/// Omega^n for any integer n (negative: inverse shifts).
inline ModuleRep heller(const ModuleRep& m, int n) {
  ModuleRep out = m;
  for (int i = 0; i < n; ++i) out = omega(out);
  for (int i = 0; i > n; --i) out = omega_inverse(out);
  return out;
}

}  // namespace jstrata
