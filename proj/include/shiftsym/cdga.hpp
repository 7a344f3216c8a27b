#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "shiftsym/derham.hpp"
#include "shiftsym/matrix.hpp"
#include "shiftsym/parse.hpp"
#include "shiftsym/report.hpp"

namespace shiftsym {

/// Drops every term that involves a generator outside the base ring,
/// i.e. sets all negative-degree generators and one-forms to zero.
inline Element restrict_to_base(const Element& e) {
  const auto& sig = *e.signature();
  Terms keep;
  for (const auto& [m, c] : e.numerator()) {
    bool base = true;
    for (const auto& [g, k] : m.factors()) {
      if (g >= sig.algebra_size() || sig.gen(g).degree != 0) {
        base = false;
        break;
      }
    }
    if (base) keep.emplace_hint(keep.end(), m, c);
  }
  return Element::from_terms(e.signature(), std::move(keep), e.denominator());
}

/// Free graded algebra over a localized polynomial base with a square-zero
/// differential built tier by tier.
class StandardFormCdga {
 public:
  StandardFormCdga() = default;

  /// Wraps the data without running the d^2 check (tier and degree checks
  /// still apply).
  static StandardFormCdga unchecked(const SignaturePtr& sig, const std::map<GenIndex, Element>& differential) {
    StandardFormCdga a;
    a.sig_ = sig;
    a.d_ = Derivation(sig, 1, 0);
    for (const auto& [g, v] : differential) {
      if (g >= sig->algebra_size()) throw ShapeError("differential is specified on algebra generators only");
      const auto& gen = sig->gen(g);
      if (gen.degree == 0) {
        if (!v.is_zero()) throw ShapeError("base generator '" + gen.name + "' must have zero differential");
        continue;
      }
      for (const auto& [m, c] : v.numerator()) {
        for (const auto& [h, k] : m.factors()) {
          if (h < sig->algebra_size() && sig->gen(h).degree <= gen.degree) {
            throw ShapeError("d " + gen.name + " involves '" + sig->gen(h).name + "' from the same or a later tier");
          }
        }
      }
      a.d_.set(g, v);
    }
    int depth = -sig->min_degree();
    a.ranks_.assign(static_cast<std::size_t>(depth) + 1, 0);
    for (GenIndex g = 0; g < sig->algebra_size(); ++g) ++a.ranks_[static_cast<std::size_t>(-sig->gen(g).degree)];
    return a;
  }

  static StandardFormCdga build(const SignaturePtr& sig, const std::map<GenIndex, Element>& differential) {
    StandardFormCdga a = unchecked(sig, differential);
    require(a.d_squared_residues(), "d o d != 0");
    return a;
  }

  static StandardFormCdga build(const SignaturePtr& sig, const std::map<std::string, std::string>& differential) {
    std::map<GenIndex, Element> d;
    for (const auto& [name, text] : differential) d.emplace(sig->index(name), parse_element(sig, text));
    return build(sig, d);
  }

  [[nodiscard]] const SignaturePtr& signature() const { return sig_; }
  [[nodiscard]] const Derivation& differential() const { return d_; }
  [[nodiscard]] const std::vector<std::size_t>& ranks() const { return ranks_; }
  [[nodiscard]] int depth() const { return static_cast<int>(ranks_.size()) - 1; }

  [[nodiscard]] Element d(const Element& e) const { return total_differential().apply(e); }

  [[nodiscard]] Report d_squared_residues() const {
    Report r;
    for (GenIndex g = 0; g < sig_->algebra_size(); ++g) {
      r.expect_zero("d(d " + sig_->gen(g).name + ")", d_.apply(d_.value(g)));
    }
    return r;
  }

  /// The differential extended to DR(A) with d(dg) = -d_dR(d g).
  [[nodiscard]] Derivation total_differential() const {
    Derivation out(sig_, 1, 0);
    for (const auto& [g, v] : d_.values()) {
      out.set(g, v);
      out.set(sig_->one_form_of(g), -de_rham(v));
    }
    return out;
  }

  /// Generators of the ideal I with H^0(A) = base / I.
  [[nodiscard]] std::vector<Element> h0_presentation() const {
    std::vector<Element> out;
    for (GenIndex g : sig_->algebra_of_degree(-1)) out.push_back(d_.value(g));
    return out;
  }

 private:
  SignaturePtr sig_;
  Derivation d_;
  std::vector<std::size_t> ranks_;
};

inline Element total_differential(const StandardFormCdga& a, const Element& e) { return a.d(e); }

/// Matrices of d^{-k}: V^{-k} -> V^{1-k} for k = 1..n. Rows are the
/// generators of degree 1-k, columns those of degree -k.
struct CotangentRestriction {
  std::vector<std::size_t> ranks;
  std::vector<Matrix> maps;  // maps[k-1] represents d^{-k}
  std::vector<std::vector<GenIndex>> tiers;
};

inline CotangentRestriction cotangent_restriction(const StandardFormCdga& a) {
  const auto& sig = a.signature();
  CotangentRestriction out;
  out.ranks = a.ranks();
  for (int k = 0; k <= a.depth(); ++k) out.tiers.push_back(sig->algebra_of_degree(-k));
  for (int k = 1; k <= a.depth(); ++k) {
    const auto& rows = out.tiers[static_cast<std::size_t>(k - 1)];
    const auto& cols = out.tiers[static_cast<std::size_t>(k)];
    Matrix m(sig, rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      Element dg = a.differential().value(cols[c]);
      for (std::size_t r = 0; r < rows.size(); ++r) m.at(r, c) = restrict_to_base(partial(sig, rows[r], dg));
    }
    out.maps.push_back(std::move(m));
  }
  return out;
}

/// A point of Spec of the base: values for every degree-0 generator.
struct RationalPoint {
  std::map<GenIndex, Scalar> values;
};

inline RationalPoint parse_point(const SignaturePtr& sig, const std::string& text) {
  RationalPoint p;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? text.size() : comma + 1;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("point entry '" + item + "' lacks '='");
    std::string name = item.substr(0, eq);
    name.erase(0, name.find_first_not_of(' '));
    name.erase(name.find_last_not_of(' ') + 1);
    auto g = sig->find(name);
    if (!g || *g >= sig->algebra_size() || sig->gen(*g).degree != 0) {
      throw ParseError("point entry '" + name + "' is not a base variable");
    }
    auto v = parse_element(sig, item.substr(eq + 1)).constant_value();
    if (!v) throw ParseError("point value for '" + name + "' is not a constant");
    if (!p.values.emplace(*g, *v).second) throw ParseError("point assigns '" + name + "' twice");
  }
  return p;
}

/// Checks that p fixes the whole base, keeps the invertibles nonzero and
/// kills the ideal I.
inline void require_point(const StandardFormCdga& a, const RationalPoint& p) {
  const auto& sig = a.signature();
  for (GenIndex g : sig->algebra_of_degree(0)) {
    if (p.values.count(g) == 0) throw PreconditionError("point does not assign '" + sig->gen(g).name + "'");
  }
  for (const auto& q : sig->invertibles()) {
    if (Element::from_terms(sig, q).evaluate(p.values).is_zero()) {
      throw PreconditionError("designated invertible vanishes at the point");
    }
  }
  for (const auto& f : a.h0_presentation()) {
    Element v = f.evaluate(p.values);
    if (!v.is_zero()) throw PreconditionError("point is not on Spec H0: " + to_string(f) + " = " + to_string(v));
  }
}

inline Report is_minimal_at(const StandardFormCdga& a, const RationalPoint& p) {
  require_point(a, p);
  const auto& sig = a.signature();
  auto cot = cotangent_restriction(a);
  Report r;
  for (std::size_t k = 0; k < cot.maps.size(); ++k) {
    Matrix m = cot.maps[k].evaluate(p.values);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        r.expect_zero("d^-" + std::to_string(k + 1) + "[" + sig->gen(cot.tiers[k][i]).name + "," +
                          sig->gen(cot.tiers[k + 1][j]).name + "]",
                      m.at(i, j));
      }
    }
  }
  return r;
}

/// alpha o d_A = d_B o alpha on every algebra generator of the source.
inline Report check_cdga_map(const AlgebraMap& f, const StandardFormCdga& a, const StandardFormCdga& b) {
  Report r;
  const auto& sig = a.signature();
  for (GenIndex g = 0; g < sig->algebra_size(); ++g) {
    r.expect_zero("map/d on " + sig->gen(g).name, f.apply(a.differential().value(g)) - b.differential().apply(f.image(g)));
  }
  return r;
}

}  // namespace shiftsym
