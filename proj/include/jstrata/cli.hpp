#pragma once

// Command-line front end. `run` parses arguments, dispatches one subcommand
// and returns the process exit code: 0 success, 1 a mathematical
// precondition failed, 2 usage error, 3 internal inconsistency.

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jstrata/error.hpp"
#include "jstrata/gallery.hpp"
#include "jstrata/homological.hpp"
#include "jstrata/jordan.hpp"
#include "jstrata/module.hpp"
#include "jstrata/module_io.hpp"
#include "jstrata/strata.hpp"

namespace jstrata::cli {

struct CommonOptions {
  std::string module_path;
  unsigned field_ext = 1;
  bool symbolic = true;
  std::string format = "table";
  unsigned jobs = 1;
};

namespace detail {

using nlohmann::ordered_json;

inline ModuleRep load_valid(const std::string& path) {
  ModuleRep m = load_module(path);
  const Validation v = m.validate();
  if (!v.ok) throw MathError("invalid-module", v.message);
  return m;
}

inline std::string module_label(const ModuleRep& m, const std::string& path) {
  return m.name().empty() ? path : m.name();
}

inline std::vector<long long> parse_int_list(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("expected a comma-separated list of integers, got \"" + s + "\"");
    }
  }
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

inline ordered_json scalar_to_json(const Field& f, Scalar v) {
  if (f.is_prime_field()) return v;
  ordered_json a = ordered_json::array();
  for (auto c : f.coefficients(v)) a.push_back(c);
  return a;
}

inline ordered_json point_to_json(const Field& f, const Point& v) {
  ordered_json a = ordered_json::array();
  for (auto x : v) a.push_back(scalar_to_json(f, x));
  return a;
}

inline ordered_json points_to_json(const PiFamily& fam, const std::vector<Point>& pts) {
  ordered_json a = ordered_json::array();
  for (const auto& v : pts) a.push_back(point_to_json(fam.field(), v));
  return a;
}

inline std::string points_text(const PiFamily& fam, const std::vector<Point>& pts) {
  if (pts.empty()) return "(none)";
  std::string s;
  for (const auto& v : pts) s += (s.empty() ? "" : " ") + fam.point_string(v);
  return s;
}

inline ordered_json ideal_to_json(const std::optional<std::vector<Poly>>& ideal, const PiFamily& fam) {
  if (!ideal) return nullptr;
  ordered_json a = ordered_json::array();
  for (const auto& g : *ideal) a.push_back(g.to_string(fam.params()));
  return a;
}

inline std::string ideal_text(const std::optional<std::vector<Poly>>& ideal, const PiFamily& fam) {
  if (!ideal) return "omitted (minor budget exceeded)";
  if (ideal->empty()) return "(0)";
  std::string s = "(";
  for (std::size_t i = 0; i < ideal->size(); ++i) s += (i ? ", " : "") + (*ideal)[i].to_string(fam.params());
  return s + ")";
}

inline std::string ranks_text(const std::vector<std::size_t>& r) {
  std::string s;
  for (std::size_t j = 0; j < r.size(); ++j) s += (j ? " " : "") + ("R" + std::to_string(j + 1) + "=" + std::to_string(r[j]));
  return s;
}

inline void print_rows(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t w = 0;
  for (const auto& r : rows) w = std::max(w, r.first.size());
  for (const auto& r : rows) out << std::left << std::setw(static_cast<int>(w + 2)) << r.first << r.second << "\n";
}

inline PiFamily family_for(const ModuleRep& m, const CommonOptions& o) {
  if (o.field_ext < 1) throw InputError("--field-ext must be positive");
  return PiFamily::for_group(m.group(), o.field_ext);
}

inline StrataOptions strata_options(const ModuleRep& m, const CommonOptions& o, bool ideals) {
  StrataOptions s;
  s.symbolic = o.symbolic;
  s.ideals = ideals && o.symbolic;
  s.jobs = std::max(1u, o.jobs);
  if (s.symbolic && !m.field().is_prime_field())
    throw InputError("symbolic ranks need a module over the prime field; pass --no-symbolic");
  return s;
}

inline void check_format(const std::string& f) {
  if (f != "table" && f != "json") throw InputError("--format must be table or json");
}

inline PiPoint build_point(const ModuleRep& m, const std::string& point, const std::string& point_poly, unsigned ext) {
  if (point.empty() == point_poly.empty()) throw InputError("give exactly one of --point and --point-poly");
  const Field k(m.p(), std::max(ext, m.field().degree()));
  if (!point.empty()) {
    std::vector<Scalar> c;
    for (auto v : parse_int_list(point)) c.push_back(k.from_int(v));
    return PiPoint::linear(m.group(), k, c);
  }
  std::vector<std::string> names;
  for (unsigned i = 0; i < m.r(); ++i) names.push_back("x" + std::to_string(i));
  return PiPoint::from_poly(m.group(), k, Poly::parse(point_poly, m.p(), names));
}

inline std::string point_poly_text(const PiPoint& a) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : a.terms()) {
    os << (first ? "" : " + ");
    first = false;
    const auto c = scalar_to_json(a.field(), t.coeff);
    os << c.dump();
    for (std::size_t i = 0; i < t.exps.size(); ++i)
      if (t.exps[i]) os << "*x" << i << (t.exps[i] > 1 ? "^" + std::to_string(t.exps[i]) : "");
  }
  return first ? "0" : os.str();
}

// -- subcommands -----------------------------------------------------------

inline int cmd_jtype(const CommonOptions& o, const std::string& point, const std::string& poly, std::ostream& out) {
  const ModuleRep m = load_valid(o.module_path);
  const PiPoint a = build_point(m, point, poly, o.field_ext);
  const JordanType t = jtype_at(m, a);
  if (o.format == "json") {
    ordered_json j;
    j["module"] = module_label(m, o.module_path);
    j["point"] = point_poly_text(a);
    j["flat"] = a.flat();
    j["jtype"] = t.to_string();
    j["ranks"] = t.rank_chain();
    out << j.dump(2) << "\n";
  } else {
    out << t.to_string() << "\n";
  }
  return 0;
}

inline ordered_json report_json(const ModuleRep& m, const std::string& label, const PiFamily& fam,
                                const StratumReport& r, const std::vector<std::size_t>& js) {
  ordered_json j;
  j["module"] = label;
  j["p"] = m.p();
  j["field"] = fam.field().name();
  j["dim"] = m.dim();
  j["parameters"] = fam.params();
  j["symbolic"] = !r.symbolic_jranks.empty();
  j["generic_type"] = r.generic_type.to_string();
  j["max_jranks"] = r.max_jranks;
  ordered_json strata = ordered_json::array();
  for (const auto& [t, idx] : r.strata) {
    std::vector<Point> pts;
    for (auto i : idx) pts.push_back(r.points[i]);
    ordered_json s;
    s["type"] = t.to_string();
    s["points"] = points_to_json(fam, pts);
    strata.push_back(s);
  }
  j["strata"] = strata;
  ordered_json gamma = ordered_json::object();
  for (auto jj : js) {
    std::vector<Point> pts;
    for (auto i : r.gamma_j(jj)) pts.push_back(r.points[i]);
    ordered_json g;
    g["max_rank"] = r.max_jranks[jj - 1];
    g["points"] = points_to_json(fam, pts);
    if (r.ideal_computed[jj - 1]) g["ideal"] = ideal_to_json(r.minor_ideals[jj - 1], fam);
    gamma[std::to_string(jj)] = g;
  }
  j["gamma"] = gamma;
  j["constant_jtype"] = r.constant_jtype();
  return j;
}

inline void report_table(std::ostream& out, const ModuleRep& m, const std::string& label, const PiFamily& fam,
                         const StratumReport& r, const std::vector<std::size_t>& js, bool show_strata) {
  std::vector<std::pair<std::string, std::string>> head{
      {"module", label},
      {"field", fam.field().name() + ", " + std::to_string(r.points.size()) + " points"},
      {"dimension", std::to_string(m.dim())},
      {"generic type", r.generic_type.to_string() + (r.symbolic_jranks.empty() ? " (enumerated)" : " (symbolic)")},
      {"max ranks", ranks_text(r.max_jranks)}};
  print_rows(out, head);
  if (show_strata) {
    out << "\n";
    std::vector<std::pair<std::string, std::string>> rows{{"stratum", "points"}};
    for (const auto& [t, idx] : r.strata) {
      std::vector<Point> pts;
      for (auto i : idx) pts.push_back(r.points[i]);
      rows.emplace_back(t.to_string(), points_text(fam, pts));
    }
    print_rows(out, rows);
  }
  out << "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  for (auto jj : js) {
    std::vector<Point> pts;
    for (auto i : r.gamma_j(jj)) pts.push_back(r.points[i]);
    rows.emplace_back("gamma^" + std::to_string(jj), points_text(fam, pts));
    if (r.ideal_computed[jj - 1]) rows.emplace_back("  ideal", ideal_text(r.minor_ideals[jj - 1], fam));
  }
  print_rows(out, rows);
}

inline int cmd_strata(const CommonOptions& o, std::ostream& out) {
  const ModuleRep m = load_valid(o.module_path);
  const PiFamily fam = family_for(m, o);
  const StratumReport r = strata(m, fam, strata_options(m, o, true));
  std::vector<std::size_t> js;
  for (std::size_t j = 1; j < m.p(); ++j) js.push_back(j);
  if (o.format == "json")
    out << report_json(m, module_label(m, o.module_path), fam, r, js).dump(2) << "\n";
  else
    report_table(out, m, module_label(m, o.module_path), fam, r, js, true);
  return 0;
}

inline int cmd_gamma(const CommonOptions& o, int j, std::ostream& out) {
  const ModuleRep m = load_valid(o.module_path);
  if (j != 0 && (j < 1 || static_cast<std::uint32_t>(j) >= m.p())) throw InputError("--j must satisfy 1 <= j < p");
  const PiFamily fam = family_for(m, o);
  StrataOptions so = strata_options(m, o, true);
  const StratumReport r = strata(m, fam, so);
  std::vector<std::size_t> js;
  if (j)
    js.push_back(static_cast<std::size_t>(j));
  else
    for (std::size_t jj = 1; jj < m.p(); ++jj) js.push_back(jj);
  const std::string label = module_label(m, o.module_path);
  if (o.format == "json") {
    ordered_json doc = report_json(m, label, fam, r, js);
    doc.erase("strata");
    if (!j) {
      std::vector<Point> u;
      for (auto i : r.gamma_union()) u.push_back(r.points[i]);
      doc["union"] = points_to_json(fam, u);
    }
    out << doc.dump(2) << "\n";
  } else {
    report_table(out, m, label, fam, r, js, false);
    if (!j) {
      std::vector<Point> u;
      for (auto i : r.gamma_union()) u.push_back(r.points[i]);
      print_rows(out, {{"gamma", points_text(fam, u)}});
    }
  }
  return 0;
}

inline int cmd_tensor(const CommonOptions& o, const std::string& a, const std::string& b, std::uint32_t p,
                      const std::string& second, std::ostream& out) {
  if (!a.empty() || !b.empty()) {
    if (a.empty() || b.empty() || !p) throw InputError("type tensor needs --a, --b and --p");
    const JordanType t = tensor_jtype(JordanType::parse(a, p), JordanType::parse(b, p));
    if (o.format == "json") {
      ordered_json j;
      j["a"] = JordanType::parse(a, p).to_string();
      j["b"] = JordanType::parse(b, p).to_string();
      j["tensor"] = t.to_string();
      j["ranks"] = t.rank_chain();
      out << j.dump(2) << "\n";
    } else {
      out << t.to_string() << "\n";
    }
    return 0;
  }
  if (o.module_path.empty() || second.empty()) throw InputError("module tensor needs --module and --with");
  const ModuleRep m = load_valid(o.module_path), n = load_valid(second);
  const std::string name = module_label(m, o.module_path) + "-tensor-" + module_label(n, second);
  out << module_to_json(tensor_module(m, n).named(name));
  return 0;
}

inline int cmd_omega(const CommonOptions& o, int n, std::ostream& out) {
  const ModuleRep m = load_valid(o.module_path);
  if (n < -3 || n > 3) throw InputError("--n must satisfy |n| <= 3");
  const std::string name = "omega" + std::to_string(n) + "(" + module_label(m, o.module_path) + ")";
  out << module_to_json(heller(m, n).named(name));
  return 0;
}

inline ordered_json class_json(const CohomClass& c, const std::string& base, const std::string& target) {
  ordered_json j;
  j["degree"] = c.degree;
  j["base"] = base;
  j["target"] = target;
  j["source_dim"] = c.source.dim();
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < c.hom.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < c.hom.cols(); ++k) row.push_back(scalar_to_json(c.hom.field(), c.hom(i, k)));
    rows.push_back(row);
  }
  j["hom"] = rows;
  return j;
}

inline int cmd_ext1(const CommonOptions& o, std::ostream& out) {
  const ModuleRep m = load_valid(o.module_path);
  const auto basis = ext1_basis(m);
  const std::string label = module_label(m, o.module_path);
  if (o.format == "json") {
    ordered_json j;
    j["module"] = label;
    j["dimension"] = basis.size();
    ordered_json cls = ordered_json::array();
    for (const auto& c : basis) cls.push_back(class_json(c, "k", label));
    j["classes"] = cls;
    out << j.dump(2) << "\n";
  } else {
    print_rows(out, {{"module", label},
                     {"source", "Omega(k), dimension " + std::to_string(basis.empty() ? 0 : basis[0].source.dim())},
                     {"dim Ext^1(k, M)", std::to_string(basis.size())}});
  }
  return 0;
}

inline int cmd_carlson(const CommonOptions& o, std::uint32_t p, unsigned r, int degree, std::size_t index,
                       std::ostream& out) {
  if (degree < 2 || degree % 2 || degree > 4) throw InputError("--degree must be 2 or 4");
  const GroupData g = GroupData::elementary_abelian(p, r);
  const Field k(p);
  const ModuleRep triv = trivial_module(g, k);
  const auto basis = ext_basis(triv, degree, triv);
  if (index >= basis.size())
    throw InputError("--index must be below " + std::to_string(basis.size()) + ", the dimension of H^" +
                     std::to_string(degree));
  const ModuleRep l = carlson_module(basis[index]).named("carlson-" + std::to_string(degree) + "-" + std::to_string(index));
  if (o.format == "json") {
    out << module_to_json(l);
  } else {
    const PiFamily fam = PiFamily::for_group(g, o.field_ext);
    StrataOptions so;
    so.symbolic = o.symbolic;
    so.ideals = false;
    so.jobs = std::max(1u, o.jobs);
    const StratumReport rep = strata(l, fam, so);
    std::vector<std::size_t> js;
    for (std::size_t j = 1; j < p; ++j) js.push_back(j);
    report_table(out, l, l.name(), fam, rep, js, true);
  }
  return 0;
}

inline int cmd_zlocus(const CommonOptions& o, const std::string& cls, int index, std::ostream& out) {
  const ModuleRep m = load_valid(o.module_path);
  CohomClass z;
  if (!cls.empty()) {
    if (m.dim() != 1) throw InputError("--class coefficients describe classes in H^1(G, k); use --index for other modules");
    std::vector<Scalar> c;
    for (auto v : parse_int_list(cls)) c.push_back(m.field().from_int(v));
    z = h1_trivial_class(m.group(), m.field(), c);
  } else {
    if (index < 0) throw InputError("give --class or --index");
    const auto basis = ext1_basis(m);
    if (static_cast<std::size_t>(index) >= basis.size())
      throw InputError("--index must be below " + std::to_string(basis.size()));
    z = basis[static_cast<std::size_t>(index)];
  }
  const PiFamily fam = family_for(m, o);
  StrataOptions so = strata_options(m, o, false);
  const auto pts = z_locus(z, fam, so);
  const bool split = pts.size() == fam.points().size() && (!o.symbolic || is_locally_split(z, fam, so));
  if (o.format == "json") {
    ordered_json j;
    j["module"] = module_label(m, o.module_path);
    j["points"] = points_to_json(fam, pts);
    j["locally_split"] = split;
    out << j.dump(2) << "\n";
  } else {
    print_rows(out, {{"module", module_label(m, o.module_path)},
                     {"zero locus", points_text(fam, pts)},
                     {"locally split", split ? "yes" : "no"}});
  }
  return 0;
}

inline int cmd_validate(const CommonOptions& o, std::ostream& out) {
  const ModuleRep m = load_module(o.module_path);
  const Validation v = m.validate();
  if (!v.ok) throw MathError("invalid-module", v.message);
  out << "ok: " << module_label(m, o.module_path) << ", dim " << m.dim() << ", " << family_name(m.group().family)
      << ", p=" << m.p() << "\n";
  return 0;
}

inline int cmd_gallery(const std::string& action, const std::string& name, const GalleryParams& gp,
                       const std::string& format, std::ostream& out) {
  if (action == "list") {
    if (format == "json") {
      ordered_json a = ordered_json::array();
      for (const auto& e : gallery_entries()) {
        ordered_json j;
        j["name"] = e.name;
        j["description"] = e.description;
        j["parameters"] = e.parameters;
        a.push_back(j);
      }
      out << a.dump(2) << "\n";
    } else {
      std::vector<std::pair<std::string, std::string>> rows;
      for (const auto& e : gallery_entries()) rows.emplace_back(e.name, e.description + "  [" + e.parameters + "]");
      print_rows(out, rows);
    }
    return 0;
  }
  if (action == "emit") {
    if (name.empty()) throw InputError("gallery emit needs an entry name");
    out << module_to_json(gallery_build(name, gp));
    return 0;
  }
  throw InputError("gallery action must be list or emit");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jordan types, non-maximal rank varieties and strata of modular representations", "jordan-strata"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand all help");

  CommonOptions o;
  auto add_common = [&](CLI::App* sc, bool module_required) {
    auto* opt = sc->add_option("--module", o.module_path, "module JSON file");
    if (module_required) opt->required()->check(CLI::ExistingFile);
    sc->add_option("--field-ext", o.field_ext, "enumerate points over GF(p^m)")->check(CLI::Range(1u, 12u));
    sc->add_flag("--symbolic,!--no-symbolic", o.symbolic, "certify maximal ranks symbolically (default on)");
    sc->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    sc->add_option("--jobs", o.jobs, "worker threads for point enumeration")->check(CLI::Range(1u, 256u));
  };

  std::string point, point_poly;
  auto* jt = app.add_subcommand("jtype", "Jordan type at one pi-point");
  add_common(jt, true);
  jt->add_option("--point", point, "linear coefficients c1,...,cr");
  jt->add_option("--point-poly", point_poly, "image polynomial in x0..x{r-1}, e.g. \"x0 - x1^2\"");

  auto* st = app.add_subcommand("strata", "Jordan-type strata over the projective parameter space");
  add_common(st, true);

  int gj = 0;
  auto* ga = app.add_subcommand("gamma", "non-maximal j-rank loci with minor ideals");
  add_common(ga, true);
  ga->add_option("--j", gj, "power j (default: every j)");

  std::string ta, tb, with;
  std::uint32_t tp = 0;
  auto* te = app.add_subcommand("tensor", "tensor product of Jordan types or of modules");
  add_common(te, false);
  te->add_option("--a", ta, "first Jordan type");
  te->add_option("--b", tb, "second Jordan type");
  te->add_option("--p", tp, "characteristic for type tensor");
  te->add_option("--with", with, "second module JSON file")->check(CLI::ExistingFile);

  int on = 1;
  auto* om = app.add_subcommand("omega", "Heller shift Omega^n of a module (JSON out)");
  add_common(om, true);
  om->add_option("--n", on, "shift, |n| <= 3");

  auto* ex = app.add_subcommand("ext1", "basis of Ext^1(k, M)");
  add_common(ex, true);

  std::uint32_t cp = 3;
  unsigned cr = 2;
  int cdeg = 2;
  std::size_t cidx = 0;
  auto* ca = app.add_subcommand("carlson", "Carlson module of a class in H^{2n}(E, k)");
  add_common(ca, false);
  ca->add_option("--p", cp, "prime")->check(CLI::Range(2u, 7u));
  ca->add_option("--r", cr, "rank of the elementary abelian group")->check(CLI::Range(1u, 2u));
  ca->add_option("--degree", cdeg, "cohomological degree 2 or 4");
  ca->add_option("--index", cidx, "basis element of H^degree");

  std::string zcls;
  int zidx = -1;
  auto* zl = app.add_subcommand("zlocus", "zero locus of a class in H^1(G, M)");
  add_common(zl, true);
  zl->add_option("--class", zcls, "coefficients c1,...,cr of a class in H^1(G, k)");
  zl->add_option("--index", zidx, "index into the Ext^1(k, M) basis");

  std::string gaction, gname;
  GalleryParams gp;
  auto* gl = app.add_subcommand("gallery", "list or emit preset modules");
  gl->add_option("action", gaction, "list or emit")->required();
  gl->add_option("name", gname, "entry name for emit");
  gl->add_option("--p", gp.p, "prime");
  gl->add_option("--lambda", gp.lambda, "highest weight for sl2-simple");
  gl->add_option("--subgroup", gp.subgroup, "subgroup for gl3-sym2");
  gl->add_option("--n", gp.n, "shift for heller-trivial");
  gl->add_option("--type", gp.type, "Jordan type of X for gln1-standard");
  gl->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));

  auto* va = app.add_subcommand("validate", "check commutativity and p-nilpotence");
  add_common(va, true);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    detail::check_format(o.format);
    if (jt->parsed()) return detail::cmd_jtype(o, point, point_poly, out);
    if (st->parsed()) return detail::cmd_strata(o, out);
    if (ga->parsed()) return detail::cmd_gamma(o, gj, out);
    if (te->parsed()) return detail::cmd_tensor(o, ta, tb, tp, with, out);
    if (om->parsed()) return detail::cmd_omega(o, on, out);
    if (ex->parsed()) return detail::cmd_ext1(o, out);
    if (ca->parsed()) return detail::cmd_carlson(o, cp, cr, cdeg, cidx, out);
    if (zl->parsed()) return detail::cmd_zlocus(o, zcls, zidx, out);
    if (gl->parsed()) return detail::cmd_gallery(gaction, gname, gp, o.format, out);
    if (va->parsed()) return detail::cmd_validate(o, out);
  } catch (const InputError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    err << "error: internal: " << e.what() << "\n";
    return 3;
  }
  err << "error: usage: no subcommand\n";
  return 2;
}

}  // namespace jstrata::cli
