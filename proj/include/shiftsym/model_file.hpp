#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "shiftsym/dcrit.hpp"
#include "shiftsym/hamilton.hpp"

namespace shiftsym {

using NamedTexts = std::vector<std::pair<std::string, std::string>>;

struct DarbouxSection {
  Family family = Family::Odd;
  int d = 0;
  std::vector<std::size_t> ranks;
  std::vector<std::string> q;
  std::string H = "0";
};

struct ClosedFormSection {
  int k = -1;
  int p = 2;
  std::vector<std::string> components;
};

struct PhiPhiSection {
  std::string Phi = "0";
  std::string phi = "0";
};

struct ChartSection {
  std::string H = "0";
};

struct ChartData {
  std::vector<std::string> base;
  std::vector<std::string> invertibles;
  std::string H = "0";
};

struct CertificateSection {
  ChartData A;
  ChartData B;
  CdgaData C;
  NamedTexts alpha;
  NamedTexts beta;
  std::string Psi = "0";
  std::string psi = "0";
};

/// Everything a file can hold. Expressions stay in text form; they are
/// parsed against the table they belong to when a section is used.
struct ModelFile {
  Field field = Field::Rational;
  std::vector<std::string> base;
  std::vector<std::string> invertibles;
  std::vector<GeneratorDecl> generators;
  NamedTexts differential;
  std::optional<DarbouxSection> darboux_spec;
  std::optional<ClosedFormSection> closed_form;
  std::optional<PhiPhiSection> phi_phi;
  std::optional<ChartSection> chart;
  std::optional<CertificateSection> comparison_certificate;
};

namespace detail {

using Json = nlohmann::ordered_json;

inline void only_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ParseError(where + " must be an object");
  for (const auto& [key, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError("unknown key '" + key + "' in " + where);
  }
}

inline const Json& need(const Json& j, const std::string& where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + " lacks '" + key + "'");
  return *it;
}

inline std::string text(const Json& j, const std::string& what) {
  if (!j.is_string()) throw ParseError(what + " must be a string");
  return j.get<std::string>();
}

inline int integer(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ParseError(what + " must be an integer");
  return j.get<int>();
}

inline std::vector<std::string> texts(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : j) out.push_back(text(v, what + " entry"));
  return out;
}

inline std::vector<std::string> opt_texts(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  return it == j.end() ? std::vector<std::string>{} : texts(*it, where + "." + key);
}

inline NamedTexts named(const Json& j, const std::string& what) {
  if (!j.is_object()) throw ParseError(what + " must be an object");
  NamedTexts out;
  for (const auto& [k, v] : j.items()) out.emplace_back(k, text(v, what + "." + k));
  return out;
}

inline std::vector<GeneratorDecl> generator_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array");
  std::vector<GeneratorDecl> out;
  for (const auto& g : j) {
    only_keys(g, what + " entry", {"name", "degree"});
    out.push_back({text(need(g, what, "name"), "generator name"), integer(need(g, what, "degree"), "generator degree")});
  }
  return out;
}

inline Field field_of(const std::string& s) {
  if (s == "rational") return Field::Rational;
  if (s == "gaussian") return Field::Gaussian;
  throw ParseError("field must be 'rational' or 'gaussian'");
}

inline std::string field_text(Field f) { return f == Field::Gaussian ? "gaussian" : "rational"; }

inline ChartData chart_data(const Json& j, const std::string& where) {
  only_keys(j, where, {"base", "invertibles", "H"});
  return {texts(need(j, where, "base"), where + ".base"), opt_texts(j, "invertibles", where),
          text(need(j, where, "H"), where + ".H")};
}

inline Json to_json(const std::vector<GeneratorDecl>& gens) {
  Json a = Json::array();
  for (const auto& g : gens) a.push_back(Json{{"name", g.name}, {"degree", g.degree}});
  return a;
}

inline Json to_json(const NamedTexts& v) {
  Json o = Json::object();
  for (const auto& [k, t] : v) o[k] = t;
  return o;
}

inline Json to_json(const ChartData& c) {
  return Json{{"base", c.base}, {"invertibles", c.invertibles}, {"H", c.H}};
}

}  // namespace detail

inline ModelFile parse_model(const std::string& content) {
  using detail::Json;
  Json j;
  try {
    j = Json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  detail::only_keys(j, "model", {"field", "base", "invertibles", "generators", "differential", "darboux_spec",
                                 "closed_form", "phi_phi", "chart", "comparison_certificate"});
  ModelFile m;
  try {
    m.field = detail::field_of(detail::text(detail::need(j, "model", "field"), "field"));
    m.base = detail::opt_texts(j, "base", "model");
    m.invertibles = detail::opt_texts(j, "invertibles", "model");
    if (j.contains("generators")) m.generators = detail::generator_list(j["generators"], "generators");
    if (j.contains("differential")) m.differential = detail::named(j["differential"], "differential");
    if (j.contains("darboux_spec")) {
      const Json& s = j["darboux_spec"];
      detail::only_keys(s, "darboux_spec", {"family", "d", "ranks", "q", "H"});
      DarbouxSection d;
      d.family = parse_family(detail::text(detail::need(s, "darboux_spec", "family"), "family"));
      d.d = detail::integer(detail::need(s, "darboux_spec", "d"), "d");
      const Json& r = detail::need(s, "darboux_spec", "ranks");
      if (!r.is_array()) throw ParseError("ranks must be an array");
      for (const auto& v : r) {
        int n = detail::integer(v, "rank");
        if (n < 0) throw ParseError("ranks must be nonnegative");
        d.ranks.push_back(static_cast<std::size_t>(n));
      }
      d.q = detail::opt_texts(s, "q", "darboux_spec");
      d.H = detail::text(detail::need(s, "darboux_spec", "H"), "H");
      m.darboux_spec = d;
    }
    if (j.contains("closed_form")) {
      const Json& s = j["closed_form"];
      detail::only_keys(s, "closed_form", {"k", "p", "components"});
      m.closed_form = ClosedFormSection{detail::integer(detail::need(s, "closed_form", "k"), "k"),
                                        detail::integer(detail::need(s, "closed_form", "p"), "p"),
                                        detail::texts(detail::need(s, "closed_form", "components"), "components")};
    }
    if (j.contains("phi_phi")) {
      const Json& s = j["phi_phi"];
      detail::only_keys(s, "phi_phi", {"Phi", "phi"});
      m.phi_phi = PhiPhiSection{detail::text(detail::need(s, "phi_phi", "Phi"), "Phi"),
                                detail::text(detail::need(s, "phi_phi", "phi"), "phi")};
    }
    if (j.contains("chart")) {
      const Json& s = j["chart"];
      detail::only_keys(s, "chart", {"H"});
      m.chart = ChartSection{detail::text(detail::need(s, "chart", "H"), "chart.H")};
    }
    if (j.contains("comparison_certificate")) {
      const Json& s = j["comparison_certificate"];
      const std::string w = "comparison_certificate";
      detail::only_keys(s, w, {"A", "B", "C", "alpha", "beta", "Psi", "psi"});
      CertificateSection c;
      c.A = detail::chart_data(detail::need(s, w, "A"), w + ".A");
      c.B = detail::chart_data(detail::need(s, w, "B"), w + ".B");
      const Json& cj = detail::need(s, w, "C");
      detail::only_keys(cj, w + ".C", {"base", "invertibles", "generators", "differential"});
      c.C.base = detail::texts(detail::need(cj, w + ".C", "base"), "C.base");
      c.C.invertibles = detail::opt_texts(cj, "invertibles", w + ".C");
      c.C.generators = detail::generator_list(detail::need(cj, w + ".C", "generators"), "C.generators");
      c.C.differential = detail::named(detail::need(cj, w + ".C", "differential"), "C.differential");
      c.alpha = detail::named(detail::need(s, w, "alpha"), "alpha");
      c.beta = detail::named(detail::need(s, w, "beta"), "beta");
      c.Psi = detail::text(detail::need(s, w, "Psi"), "Psi");
      c.psi = detail::text(detail::need(s, w, "psi"), "psi");
      m.comparison_certificate = c;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad model file: ") + e.what());
  }
  return m;
}

/// Canonical text: fixed key order, two-space indent, trailing newline.
inline std::string print_model(const ModelFile& m) {
  using detail::Json;
  Json j;
  j["field"] = detail::field_text(m.field);
  j["base"] = m.base;
  j["invertibles"] = m.invertibles;
  j["generators"] = detail::to_json(m.generators);
  j["differential"] = detail::to_json(m.differential);
  if (m.darboux_spec) {
    const auto& d = *m.darboux_spec;
    j["darboux_spec"] = Json{{"family", family_name(d.family)}, {"d", d.d}, {"ranks", d.ranks}, {"q", d.q}, {"H", d.H}};
  }
  if (m.closed_form) {
    j["closed_form"] = Json{{"k", m.closed_form->k}, {"p", m.closed_form->p}, {"components", m.closed_form->components}};
  }
  if (m.phi_phi) j["phi_phi"] = Json{{"Phi", m.phi_phi->Phi}, {"phi", m.phi_phi->phi}};
  if (m.chart) j["chart"] = Json{{"H", m.chart->H}};
  if (m.comparison_certificate) {
    const auto& c = *m.comparison_certificate;
    j["comparison_certificate"] =
        Json{{"A", detail::to_json(c.A)},
             {"B", detail::to_json(c.B)},
             {"C", Json{{"base", c.C.base},
                        {"invertibles", c.C.invertibles},
                        {"generators", detail::to_json(c.C.generators)},
                        {"differential", detail::to_json(c.C.differential)}}},
             {"alpha", detail::to_json(c.alpha)},
             {"beta", detail::to_json(c.beta)},
             {"Psi", c.Psi},
             {"psi", c.psi}};
  }
  return j.dump(2) + "\n";
}

inline ModelFile read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

inline void write_model_file(const std::string& path, const ModelFile& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << print_model(m);
}

inline DarbouxSpec darboux_spec_of(const ModelFile& m) {
  if (!m.darboux_spec) throw ShapeError("file has no darboux_spec section");
  const auto& s = *m.darboux_spec;
  return {s.family, s.d, m.field, m.base, m.invertibles, s.ranks, s.q, s.H};
}

inline CriticalChart chart_of(const ModelFile& m) {
  if (!m.chart) throw ShapeError("file has no chart section");
  return {m.field, m.base, m.invertibles, m.chart->H};
}

inline ComparisonCertificate certificate_of(const ModelFile& m) {
  if (!m.comparison_certificate) throw ShapeError("file has no comparison_certificate section");
  const auto& c = *m.comparison_certificate;
  ComparisonCertificate out;
  out.field = m.field;
  out.A = {m.field, c.A.base, c.A.invertibles, c.A.H};
  out.B = {m.field, c.B.base, c.B.invertibles, c.B.H};
  out.C = c.C;
  out.alpha = c.alpha;
  out.beta = c.beta;
  out.Psi = c.Psi;
  out.psi = c.psi;
  return out;
}

/// A loaded model: the cdga plus whatever form data the file carries.
struct LoadedModel {
  StandardFormCdga algebra;
  std::optional<ClosedForm> form;
  std::optional<PhiPhiPair> pair;
};

/// Files with explicit generators are read as written; otherwise a
/// darboux_spec or chart section is expanded into its Darboux model.
inline LoadedModel load_model(const ModelFile& m) {
  if (m.generators.empty() && m.differential.empty()) {
    if (m.darboux_spec || m.chart) {
      DarbouxPackage p = generate(m.darboux_spec ? darboux_spec_of(m) : derived_critical_locus(chart_of(m)));
      return {p.algebra, p.omega, p.pair};
    }
  }
  std::vector<GeneratorDecl> base;
  for (const auto& b : m.base) base.push_back({b, 0});
  auto invs = parse_invertibles(m.field, base, m.invertibles);
  std::vector<GeneratorDecl> all = base;
  for (const auto& g : m.generators) {
    if (g.degree >= 0) throw ShapeError("generator '" + g.name + "' must have negative degree");
    all.push_back(g);
  }
  SignaturePtr sig = Signature::create(m.field, all, invs);
  std::map<GenIndex, Element> d;
  for (const auto& [name, t] : m.differential) {
    GenIndex g = sig->index(name);
    if (!d.emplace(g, parse_element(sig, t)).second) throw ParseError("differential of '" + name + "' given twice");
  }
  LoadedModel out{StandardFormCdga::unchecked(sig, d), std::nullopt, std::nullopt};
  if (m.closed_form) {
    ClosedForm w{m.closed_form->k, m.closed_form->p, {}};
    for (const auto& c : m.closed_form->components) w.components.push_back(parse_element(sig, c));
    require_form_shape(w);
    out.form = std::move(w);
  }
  if (m.phi_phi) out.pair = PhiPhiPair{parse_element(sig, m.phi_phi->Phi), parse_element(sig, m.phi_phi->phi)};
  return out;
}

/// Serializes a generated package, keeping the spec it came from.
inline ModelFile model_of(const DarbouxSpec& spec, const DarbouxPackage& p) {
  ModelFile m;
  m.field = spec.field;
  const auto& sig = p.roster.sig;
  for (GenIndex g = 0; g < sig->algebra_size(); ++g) {
    if (sig->gen(g).degree == 0) {
      m.base.push_back(sig->gen(g).name);
    } else {
      m.generators.push_back({sig->gen(g).name, sig->gen(g).degree});
    }
  }
  for (const auto& t : sig->invertibles()) m.invertibles.push_back(detail::terms_text(*sig, t));
  for (GenIndex g = 0; g < sig->algebra_size(); ++g) {
    Element v = p.algebra.differential().value(g);
    if (!v.is_zero()) m.differential.emplace_back(sig->gen(g).name, to_string(v));
  }
  m.darboux_spec = DarbouxSection{spec.family, spec.d, spec.ranks, spec.q, spec.H};
  ClosedFormSection w{p.omega.k, p.omega.p, {}};
  for (const auto& c : p.omega.components) w.components.push_back(to_string(c));
  m.closed_form = w;
  m.phi_phi = PhiPhiSection{to_string(p.pair.Phi), to_string(p.pair.phi)};
  return m;
}

}  // namespace shiftsym
