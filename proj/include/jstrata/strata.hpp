#pragma once

// Jordan-type functions over parameterized families of pi-points: generic
// types, maximal j-ranks, non-maximal rank loci and strata.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "jstrata/error.hpp"
#include "jstrata/jordan.hpp"
#include "jstrata/module.hpp"
#include "jstrata/poly.hpp"
#include "jstrata/poly_matrix.hpp"

namespace jstrata {

using Point = std::vector<Scalar>;

/// A family of pi-points t -> sum_k c_k(l) x^{e_k}, with coefficients
/// polynomial in projective parameters l, enumerated over GF(p^m).
class PiFamily {
 public:
  struct Term {
    Poly coeff;                 // in the parameters
    std::vector<unsigned> exps; // on the generators
  };

  PiFamily() = default;
  PiFamily(GroupData group, std::vector<std::string> params, std::vector<Term> image, unsigned ext_degree = 1)
      : group_(group), params_(std::move(params)), image_(std::move(image)), ext_degree_(ext_degree) {
    if (params_.empty()) throw InputError("a family needs at least one parameter");
    for (const auto& t : image_) {
      if (t.coeff.nvars() != params_.size() || t.coeff.p() != group_.p) throw InputError("family coefficient ring mismatch");
      if (t.exps.size() != group_.r) throw InputError("family monomial has the wrong number of exponents");
      unsigned deg = 0;
      for (auto e : t.exps) deg += e;
      if (!deg) throw InputError("family image must have zero constant term");
    }
  }

  /// l_1 x_1 + ... + l_r x_r.
  static PiFamily standard(const GroupData& g, unsigned ext_degree = 1) {
    std::vector<std::string> names;
    std::vector<Term> image;
    for (unsigned i = 0; i < g.r; ++i) {
      names.push_back("l" + std::to_string(i + 1));
      std::vector<unsigned> e(g.r, 0);
      e[i] = 1;
      image.push_back({Poly::variable(g.p, g.r, i), e});
    }
    return PiFamily(g, names, image, ext_degree);
  }

  /// s1 x_0 + s0^p x_1 with parameters [s0 : s1].
  static PiFamily sl2_frobenius(std::uint32_t p, unsigned ext_degree = 1) {
    GroupData g = GroupData::make(Family::sl2_frobenius, p, 2);
    std::vector<Term> image{{Poly::variable(p, 2, 1), {1, 0}}, {Poly::variable(p, 2, 0, p), {0, 1}}};
    return PiFamily(g, {"s0", "s1"}, image, ext_degree);
  }

  /// The natural family for a group: the Frobenius-twisted line for the
  /// second Frobenius kernel of SL_2, the linear family otherwise.
  static PiFamily for_group(const GroupData& g, unsigned ext_degree = 1) {
    if (g.family == Family::sl2_frobenius) return sl2_frobenius(g.p, ext_degree).with_group(g);
    return standard(g, ext_degree);
  }

  PiFamily with_group(const GroupData& g) const {
    PiFamily f = *this;
    f.group_ = g;
    return f;
  }
  PiFamily with_ext_degree(unsigned m) const {
    PiFamily f = *this;
    f.ext_degree_ = m;
    return f;
  }

  const GroupData& group() const { return group_; }
  const std::vector<std::string>& params() const { return params_; }
  const std::vector<Term>& image() const { return image_; }
  unsigned ext_degree() const { return ext_degree_; }
  Field field() const { return Field(group_.p, ext_degree_); }

  /// Points of P^{n-1}(GF(p^m)), first nonzero coordinate 1, lexicographic.
  std::vector<Point> points() const {
    const Field f = field();
    const std::size_t n = params_.size();
    const std::uint64_t q = f.size();
    double total = 0;
    for (std::size_t k = 0; k < n; ++k) total += std::pow(static_cast<double>(q), static_cast<double>(k));
    if (total > 2e6) throw InputError("too many projective points to enumerate");
    std::vector<Point> pts;
    for (std::size_t lead = n; lead-- > 0;) {
      // coordinates before `lead` are zero, `lead` is one, the rest free
      const std::size_t free = n - lead - 1;
      std::uint64_t count = 1;
      for (std::size_t k = 0; k < free; ++k) count *= q;
      for (std::uint64_t code = 0; code < count; ++code) {
        Point pt(n, 0);
        pt[lead] = 1;
        std::uint64_t c = code;
        for (std::size_t k = n; k-- > lead + 1;) {
          pt[k] = c % q;
          c /= q;
        }
        pts.push_back(pt);
      }
    }
    std::sort(pts.begin(), pts.end());
    return pts;
  }

  /// The pi-point at a parameter value.
  PiPoint at(const Point& v) const {
    const Field f = field();
    if (v.size() != params_.size()) throw InputError("point has the wrong number of coordinates");
    std::vector<PiPoint::Term> terms;
    for (const auto& t : image_) {
      Scalar c = t.coeff.evaluate(f, v);
      if (c) terms.push_back({t.exps, c});
    }
    return PiPoint(group_, f, std::move(terms));
  }

  /// Theta(l) = sum_k c_k(l) X^{e_k} over GF(p)[l].
  PolyMatrix theta(const ModuleRep& m) const {
    if (!m.field().is_prime_field())
      throw InputError("symbolic operators need a module over the prime field");
    std::vector<Poly> coeffs;
    std::vector<Matrix> mats;
    for (const auto& t : image_) {
      Matrix mono = Matrix::identity(m.field(), m.dim());
      for (unsigned i = 0; i < group_.r; ++i)
        if (t.exps[i]) mono = mono * m.generator(i).pow(t.exps[i]);
      coeffs.push_back(t.coeff);
      mats.push_back(mono);
    }
    return PolyMatrix::linear_combination(coeffs, mats, params_);
  }

  std::string point_string(const Point& v) const {
    const Field f = field();
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ":";
      if (f.is_prime_field()) {
        s += std::to_string(v[i]);
      } else {
        // coefficient vector c0.c1...
        const auto c = f.coefficients(v[i]);
        s += "(";
        for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
        s += ")";
      }
    }
    return s + "]";
  }

 private:
  GroupData group_;
  std::vector<std::string> params_;
  std::vector<Term> image_;
  unsigned ext_degree_ = 1;
};

struct StrataOptions {
  bool symbolic = true;     // certify maximal ranks by the generic point
  bool ideals = true;       // compute minor ideals for the Gamma^j
  unsigned jobs = 1;
  std::uint64_t minor_budget = 4000000;
};

struct StratumReport {
  std::uint32_t p = 2;
  std::size_t dim = 0;
  std::vector<Point> points;
  std::vector<JordanType> types;                    // per point
  std::vector<std::vector<std::size_t>> ranks;      // per point, j = 1..p-1
  std::vector<std::pair<JordanType, std::vector<std::size_t>>> strata;  // type -> point indices
  JordanType generic_type;
  std::vector<std::size_t> max_jranks;              // R_1..R_{p-1}
  std::vector<std::size_t> symbolic_jranks;         // empty when not symbolic
  std::vector<std::vector<std::size_t>> gamma;      // per j (index j-1)
  std::vector<std::optional<std::vector<Poly>>> minor_ideals;  // per j; nullopt: omitted
  std::vector<bool> ideal_computed;                 // per j

  const std::vector<std::size_t>& gamma_j(std::size_t j) const { return gamma.at(j - 1); }
  std::vector<std::size_t> gamma_union() const {
    std::set<std::size_t> u;
    for (const auto& g : gamma) u.insert(g.begin(), g.end());
    return {u.begin(), u.end()};
  }
  bool constant_jrank(std::size_t j) const {
    if (!gamma_j(j).empty()) return false;
    for (const auto& r : ranks)
      if (r[j - 1] != max_jranks[j - 1]) return false;
    return true;
  }
  bool constant_jtype() const {
    for (std::size_t j = 1; j < p; ++j)
      if (!constant_jrank(j)) return false;
    return true;
  }
};

namespace detail {

/// Ranks of theta^j, j = 1..p-1, at every point; parallel over points.
inline std::vector<std::vector<std::size_t>> point_ranks(const ModuleRep& m, const PiFamily& f,
                                                         const std::vector<Point>& pts, unsigned jobs) {
  std::vector<std::vector<std::size_t>> out(pts.size());
  std::vector<std::string> errors(pts.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < pts.size(); i += stride) {
      try {
        PiPoint a = f.at(pts[i]);
        if (!a.flat()) throw MathError("non-flat", "family is not flat at " + f.point_string(pts[i]));
        auto chain = rank_chain_of(theta(m, a), m.p());
        if (chain.back() != 0) throw MathError("not-nilpotent", "theta is not p-nilpotent");
        chain.pop_back();
        out[i] = chain;
      } catch (const MathError& e) {
        errors[i] = e.code() + "\n" + e.what();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(pts.size(), 1))));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(work, t, jobs);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) {
      const auto nl = e.find('\n');
      throw MathError(e.substr(0, nl), e.substr(nl + 1));
    }
  return out;
}

}  // namespace detail

/// Ranks of Theta(l)^j over the fraction field, j = 1..p.
inline std::vector<std::size_t> symbolic_jranks(const ModuleRep& m, const PiFamily& f) {
  const PolyMatrix th = f.theta(m);
  std::vector<std::size_t> ranks;
  PolyMatrix power = th;
  for (std::uint32_t j = 1; j <= m.p(); ++j) {
    const std::size_t r = power.is_zero() ? 0 : symbolic_rank(power);
    ranks.push_back(r);
    if (r == 0) {
      ranks.resize(m.p(), 0);
      break;
    }
    if (j < m.p()) power = power * th;
  }
  return ranks;
}

inline JordanType generic_jtype(const ModuleRep& m, const PiFamily& f) {
  return JordanType::from_rank_chain(m.p(), m.dim(), symbolic_jranks(m, f));
}

inline StratumReport strata(const ModuleRep& m, const PiFamily& f, const StrataOptions& opt = {}) {
  if (f.group().r != m.r() || f.group().p != m.p()) throw InputError("family does not match the module's group");
  const std::uint32_t p = m.p();
  StratumReport rep;
  rep.p = p;
  rep.dim = m.dim();
  rep.points = f.points();
  rep.ranks = detail::point_ranks(m, f, rep.points, opt.jobs);
  for (const auto& r : rep.ranks) rep.types.push_back(JordanType::from_rank_chain(p, m.dim(), r));

  std::vector<std::size_t> enum_max(p - 1, 0);
  for (const auto& r : rep.ranks)
    for (std::size_t j = 0; j + 1 < p; ++j) enum_max[j] = std::max(enum_max[j], r[j]);

  std::optional<PolyMatrix> th;
  if (opt.symbolic) {
    th = f.theta(m);
    auto sym = symbolic_jranks(m, f);
    rep.symbolic_jranks.assign(sym.begin(), sym.begin() + (p - 1));
    for (std::size_t j = 0; j + 1 < p; ++j)
      if (enum_max[j] > rep.symbolic_jranks[j])
        throw InternalError("rank at an enumerated point exceeds the generic rank for j = " + std::to_string(j + 1));
    rep.max_jranks = rep.symbolic_jranks;
    rep.generic_type = JordanType::from_rank_chain(p, m.dim(), sym);
  } else {
    rep.max_jranks = enum_max;
    bool found = false;
    for (std::size_t i = 0; i < rep.points.size() && !found; ++i)
      if (rep.ranks[i] == enum_max) {
        rep.generic_type = rep.types[i];
        found = true;
      }
    if (!found)
      throw MathError("no-generic-point", "no enumerated point attains every maximal j-rank; "
                                          "enlarge the enumeration field or use symbolic ranks");
  }

  rep.gamma.assign(p - 1, {});
  for (std::size_t i = 0; i < rep.points.size(); ++i)
    for (std::size_t j = 0; j + 1 < p; ++j)
      if (rep.ranks[i][j] < rep.max_jranks[j]) rep.gamma[j].push_back(i);

  rep.minor_ideals.assign(p - 1, std::nullopt);
  rep.ideal_computed.assign(p - 1, false);
  if (opt.ideals && th) {
    const Field ef = f.field();
    PolyMatrix power = *th;
    for (std::size_t j = 1; j < p; ++j) {
      if (j > 1) power = power * *th;
      const std::size_t rj = rep.max_jranks[j - 1];
      std::optional<std::vector<Poly>> ideal;
      if (rj == 0)
        ideal = std::vector<Poly>{Poly::constant(p, static_cast<unsigned>(f.params().size()), 1)};
      else
        ideal = minors_ideal(power, rj, opt.minor_budget);
      rep.ideal_computed[j - 1] = true;
      if (ideal) {
        // the zero set must be the enumerated rank-drop locus
        std::set<std::size_t> gset(rep.gamma[j - 1].begin(), rep.gamma[j - 1].end());
        for (std::size_t i = 0; i < rep.points.size(); ++i) {
          bool vanish = true;
          for (const auto& g : *ideal)
            if (g.evaluate(ef, rep.points[i]) != 0) {
              vanish = false;
              break;
            }
          if (vanish != (gset.count(i) > 0))
            throw InternalError("minor ideal and point ranks disagree at " + f.point_string(rep.points[i]));
        }
      }
      rep.minor_ideals[j - 1] = std::move(ideal);
    }
  }

  std::map<JordanType, std::vector<std::size_t>> by_type;
  for (std::size_t i = 0; i < rep.types.size(); ++i) by_type[rep.types[i]].push_back(i);
  for (auto& [t, idx] : by_type) rep.strata.emplace_back(t, idx);
  // generic-most strata first: descending rank chains
  std::sort(rep.strata.begin(), rep.strata.end(), [](const auto& a, const auto& b) {
    const auto ra = a.first.rank_chain(), rb = b.first.rank_chain();
    if (ra != rb) return ra > rb;
    return a.first < b.first;
  });
  return rep;
}

inline std::size_t max_jrank(const ModuleRep& m, const PiFamily& f, std::size_t j, const StrataOptions& opt = {}) {
  if (j < 1 || j >= m.p()) throw InputError("j must satisfy 1 <= j < p");
  StrataOptions o = opt;
  o.ideals = false;
  return strata(m, f, o).max_jranks[j - 1];
}

struct GammaResult {
  std::vector<Point> points;
  std::optional<std::vector<Poly>> ideal;  // nullopt when omitted
  std::size_t max_rank = 0;
};

inline GammaResult gamma_j(const ModuleRep& m, const PiFamily& f, std::size_t j, const StrataOptions& opt = {}) {
  if (j < 1 || j >= m.p()) throw InputError("j must satisfy 1 <= j < p");
  StratumReport rep = strata(m, f, opt);
  GammaResult out;
  for (auto i : rep.gamma_j(j)) out.points.push_back(rep.points[i]);
  out.ideal = rep.minor_ideals[j - 1];
  out.max_rank = rep.max_jranks[j - 1];
  return out;
}

inline std::vector<Point> gamma(const ModuleRep& m, const PiFamily& f, const StrataOptions& opt = {}) {
  StrataOptions o = opt;
  o.ideals = false;
  StratumReport rep = strata(m, f, o);
  std::vector<Point> out;
  for (auto i : rep.gamma_union()) out.push_back(rep.points[i]);
  return out;
}

inline bool is_constant_jrank(const ModuleRep& m, const PiFamily& f, std::size_t j, const StrataOptions& opt = {}) {
  if (j < 1 || j >= m.p()) throw InputError("j must satisfy 1 <= j < p");
  StrataOptions o = opt;
  o.ideals = false;
  return strata(m, f, o).constant_jrank(j);
}

inline bool is_constant_jtype(const ModuleRep& m, const PiFamily& f, const StrataOptions& opt = {}) {
  StrataOptions o = opt;
  o.ideals = false;
  return strata(m, f, o).constant_jtype();
}

}  // namespace jstrata
