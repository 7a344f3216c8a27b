#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shiftsym/darboux.hpp"

namespace shiftsym {

/// A k = -1 chart: smooth base with potential H; the derived critical
/// locus is the Darboux model with d y_j = dH/dx_j.
struct CriticalChart {
  Field field = Field::Rational;
  std::vector<std::string> base;
  std::vector<std::string> invertibles;
  std::string H = "0";
};

inline DarbouxSpec derived_critical_locus(const CriticalChart& c) {
  DarbouxSpec s;
  s.family = Family::Odd;
  s.d = 0;
  s.field = c.field;
  s.base = c.base;
  s.invertibles = c.invertibles;
  s.ranks = {c.base.size()};
  s.H = c.H;
  return s;
}

/// (dH/dx_1, ..., dH/dx_m) in the chart's roster table.
inline std::vector<Element> critical_ideal(const Roster& r) {
  std::vector<Element> out;
  for (GenIndex g = 0; g < r.sig->algebra_size(); ++g) {
    if (r.sig->gen(g).degree == 0) out.push_back(partial(r.sig, g, r.H));
  }
  return out;
}

/// Subtracts the common value of H on the supplied critical points.
inline CriticalChart normalize_potential(const CriticalChart& c, const std::vector<std::string>& points) {
  Roster r = roster(derived_critical_locus(c));
  auto ideal = critical_ideal(r);
  std::optional<Scalar> common;
  for (const auto& text : points) {
    RationalPoint p = parse_point(r.sig, text);
    for (GenIndex g : r.sig->algebra_of_degree(0)) {
      if (p.values.count(g) == 0) throw PreconditionError("point does not assign '" + r.sig->gen(g).name + "'");
    }
    for (const auto& f : ideal) {
      if (!f.evaluate(p.values).is_zero()) throw PreconditionError("point " + text + " is not critical");
    }
    Scalar v = *r.H.evaluate(p.values).constant_value();
    if (common && !(*common == v)) {
      throw CheckFailure("H is locally constant, not constant, on the supplied points: " + common->str() + " vs " + v.str());
    }
    common = v;
  }
  CriticalChart out = c;
  if (common && !common->is_zero()) out.H = to_string(r.H - Element::constant(r.sig, *common));
  return out;
}

/// Hessian of H at a critical point; the two-term complex T U -> T*U has
/// equal ranks on both sides.
struct HessianComplex {
  Matrix hessian;
  std::size_t source_rank = 0;
  std::size_t target_rank = 0;
};

inline HessianComplex hessian_complex_at(const CriticalChart& c, const std::string& point) {
  Roster r = roster(derived_critical_locus(c));
  RationalPoint p = parse_point(r.sig, point);
  auto a = StandardFormCdga::unchecked(r.sig, darboux_differential(r));
  require_point(a, p);
  auto base = r.sig->algebra_of_degree(0);
  Matrix h(r.sig, base.size(), base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = 0; j < base.size(); ++j) h.at(i, j) = partial(r.sig, base[i], partial(r.sig, base[j], r.H));
  }
  return {h.evaluate(p.values), base.size(), base.size()};
}

/// Standard-form cdga C = C(0)[e_1, ..., e_m] with every e_j in degree -1.
struct CdgaData {
  std::vector<std::string> base;
  std::vector<std::string> invertibles;
  std::vector<GeneratorDecl> generators;
  std::vector<std::pair<std::string, std::string>> differential;
};

struct ComparisonCertificate {
  Field field = Field::Rational;
  CriticalChart A;
  CriticalChart B;
  CdgaData C;
  std::vector<std::pair<std::string, std::string>> alpha;
  std::vector<std::pair<std::string, std::string>> beta;
  std::string Psi = "0";
  std::string psi = "0";
};

struct ComparisonReport {
  Report checks;
  std::vector<Element> I, L;
  std::vector<std::vector<Element>> J, K, M;
  std::vector<std::vector<std::vector<Element>>> N;
  Element difference;  // a*(H) - b*(H^)
  Element witness;     // sum_{j,j'} I_j I_j' M_{j'j}
};

namespace detail {

inline SignaturePtr cdga_signature(Field field, const CdgaData& c) {
  std::vector<GeneratorDecl> base;
  for (const auto& b : c.base) base.push_back({b, 0});
  auto invs = parse_invertibles(field, base, c.invertibles);
  std::vector<GeneratorDecl> all = base;
  for (const auto& g : c.generators) all.push_back(g);
  return Signature::create(field, all, invs);
}

inline AlgebraMap parse_map(const SignaturePtr& src, const SignaturePtr& tgt,
                            const std::vector<std::pair<std::string, std::string>>& values) {
  AlgebraMap m(src, tgt);
  std::vector<bool> seen(src->algebra_size(), false);
  for (const auto& [name, text] : values) {
    GenIndex g = src->index(name);
    if (g >= src->algebra_size()) throw ShapeError("map value given for a one-form symbol");
    m.set(g, parse_element(tgt, text));
    seen[g] = true;
  }
  for (GenIndex g = 0; g < src->algebra_size(); ++g) {
    if (!seen[g]) throw ShapeError("map lacks a value for '" + src->gen(g).name + "'");
  }
  return m;
}

}  // namespace detail

inline ComparisonReport verify_comparison(const ComparisonCertificate& cert) {
  CriticalChart ca = cert.A;
  CriticalChart cb = cert.B;
  ca.field = cb.field = cert.field;
  DarbouxPackage pa = generate(derived_critical_locus(ca));
  DarbouxPackage pb = generate(derived_critical_locus(cb));
  SignaturePtr sc = detail::cdga_signature(cert.field, cert.C);
  std::map<GenIndex, Element> dc;
  for (const auto& [name, text] : cert.C.differential) dc.emplace(sc->index(name), parse_element(sc, text));
  StandardFormCdga c = StandardFormCdga::build(sc, dc);
  std::vector<GenIndex> e = sc->algebra_of_degree(-1);
  if (e.size() + sc->algebra_of_degree(0).size() != sc->algebra_size()) {
    throw ShapeError("C must be generated over its base by degree -1 variables only");
  }
  std::vector<GenIndex> zc = sc->algebra_of_degree(0);
  AlgebraMap alpha = detail::parse_map(pa.roster.sig, sc, cert.alpha);
  AlgebraMap beta = detail::parse_map(pb.roster.sig, sc, cert.beta);
  Element Psi = parse_element(sc, cert.Psi);
  Element psi = parse_element(sc, cert.psi);
  if (!Psi.has_bidegree(-1, 0)) throw ShapeError("Psi must lie in C^-1");
  if (!psi.has_bidegree(-3, 1)) throw ShapeError("psi must be a one-form of degree -3");

  ComparisonReport out;
  Report& r = out.checks;
  r.merge(check_cdga_map(alpha, pa.algebra, c), "alpha: ");
  r.merge(check_cdga_map(beta, pb.algebra, c), "beta: ");
  const PhiPhiPair& A = pa.pair;
  const PhiPhiPair& B = pb.pair;
  r.expect_zero("alpha(Phi) - beta(Phi^) - d Psi", alpha.apply(A.Phi) - beta.apply(B.Phi) - c.d(Psi));
  r.expect_zero("alpha_*(phi) - beta_*(phi^) - d_dR Psi - d psi",
                alpha.apply(A.phi) - beta.apply(B.phi) - de_rham(Psi) - c.d(psi));

  // coefficient functions
  const std::size_t m = e.size();
  auto pe = [&](std::size_t j, const Element& v) { return partial(sc, e[j], v); };
  Element rebuilt_psi(sc);
  Element rebuilt_Psi(sc);
  out.M.assign(m, std::vector<Element>(m, Element(sc)));
  out.N.assign(m, std::vector<std::vector<Element>>(m, std::vector<Element>(zc.size(), Element(sc))));
  for (std::size_t j = 0; j < m; ++j) {
    out.I.push_back(c.differential().value(e[j]));
    out.L.push_back(pe(j, Psi));
    rebuilt_Psi += out.L[j] * Element::generator(sc, e[j]);
  }
  for (std::size_t jp = 0; jp < m; ++jp) {
    Element coeff = contract(partial_derivation(sc, e[jp]), psi);
    for (std::size_t j = 0; j < m; ++j) {
      out.M[j][jp] = pe(j, coeff);
      rebuilt_psi += out.M[j][jp] * Element::generator(sc, e[j]) * Element::generator(sc, sc->one_form_of(e[jp]));
    }
  }
  for (std::size_t z = 0; z < zc.size(); ++z) {
    Element coeff = contract(partial_derivation(sc, zc[z]), psi);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        out.N[a][b][z] = Scalar::rational(1, 2) * pe(b, pe(a, coeff));
        rebuilt_psi += out.N[a][b][z] * Element::generator(sc, e[a]) * Element::generator(sc, e[b]) *
                       Element::generator(sc, sc->one_form_of(zc[z]));
      }
    }
  }
  r.expect_zero("Psi - sum L e", Psi - rebuilt_Psi);
  r.expect_zero("psi - sum M e de - sum N e e dz", psi - rebuilt_psi);
  auto ys = [](const Roster& ro) {
    std::vector<GenIndex> v;
    for (const auto& p : ro.pairs) v.push_back(p.y);
    return v;
  };
  auto xs = [](const Roster& ro) {
    std::vector<GenIndex> v;
    for (const auto& p : ro.pairs) v.push_back(p.x);
    return v;
  };
  for (GenIndex y : ys(pa.roster)) {
    std::vector<Element> row;
    Element img = alpha.image(y);
    Element back(sc);
    for (std::size_t j = 0; j < m; ++j) {
      row.push_back(pe(j, img));
      back += row.back() * Element::generator(sc, e[j]);
    }
    r.expect_zero("alpha(" + pa.roster.sig->gen(y).name + ") - sum J e", img - back);
    out.J.push_back(std::move(row));
  }
  for (GenIndex y : ys(pb.roster)) {
    std::vector<Element> row;
    Element img = beta.image(y);
    Element back(sc);
    for (std::size_t j = 0; j < m; ++j) {
      row.push_back(pe(j, img));
      back += row.back() * Element::generator(sc, e[j]);
    }
    r.expect_zero("beta(" + pb.roster.sig->gen(y).name + ") - sum K e", img - back);
    out.K.push_back(std::move(row));
  }

  // coefficient identities
  Element sum_il(sc);
  for (std::size_t j = 0; j < m; ++j) sum_il += out.I[j] * out.L[j];
  r.expect_zero("a*(Phi) - b*(Phi^) - sum I L", alpha.apply(A.Phi) - beta.apply(B.Phi) - sum_il);
  for (std::size_t j = 0; j < m; ++j) {
    Element s = out.L[j];
    for (std::size_t jp = 0; jp < m; ++jp) s += out.I[jp] * out.M[jp][j];
    r.expect_zero("L_" + std::to_string(j + 1) + " + sum I M", s);
  }
  auto xa = xs(pa.roster);
  auto xb = xs(pb.roster);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t zp = 0; zp < zc.size(); ++zp) {
      Element lhs(sc);
      for (std::size_t i = 0; i < xa.size(); ++i) lhs += out.J[i][j] * partial(sc, zc[zp], alpha.image(xa[i]));
      for (std::size_t i = 0; i < xb.size(); ++i) lhs -= out.K[i][j] * partial(sc, zc[zp], beta.image(xb[i]));
      Element rhs = -partial(sc, zc[zp], out.L[j]);
      for (std::size_t jpp = 0; jpp < m; ++jpp) {
        rhs += out.M[j][jpp] * partial(sc, zc[zp], out.I[jpp]);
        rhs += Scalar(2) * out.I[jpp] * out.N[jpp][j][zp];
      }
      r.expect_zero("de_" + std::to_string(j + 1) + " dz_" + sc->gen(zc[zp]).name + " coefficient", lhs - rhs);
    }
  }
  out.difference = alpha.apply(pa.roster.H) - beta.apply(pb.roster.H);
  out.witness = Element(sc);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t jp = 0; jp < m; ++jp) out.witness += out.I[j] * out.I[jp] * out.M[jp][j];
  }
  r.expect_zero("a*(H) - b*(H^) - sum I_j I_j' M_j'j", out.difference - out.witness);
  return out;
}

}  // namespace shiftsym
