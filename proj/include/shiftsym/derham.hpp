#pragma once

#include <map>
#include <string>
#include <utility>

#include "shiftsym/derivation.hpp"
#include "shiftsym/report.hpp"

namespace shiftsym {

/// d_dR as a derivation on the extended table: g -> dg, dg -> 0.
inline Derivation de_rham_derivation(const SignaturePtr& sig) {
  Derivation d(sig, -1, 1);
  for (GenIndex g = 0; g < sig->algebra_size(); ++g) d.set(g, Element::generator(sig, sig->one_form_of(g)));
  return d;
}

inline Element de_rham(const Element& e) { return de_rham_derivation(e.signature()).apply(e); }

/// A vector field on A: weight zero and no one-form symbols in its values.
inline void require_vector_field(const Derivation& x) {
  if (x.weight() != 0) throw PreconditionError("vector field must have weight 0");
  for (const auto& [g, v] : x.values()) {
    if (x.signature()->is_one_form(g)) throw PreconditionError("vector field acts on one-form symbols");
    for (const auto& [m, c] : v.numerator()) {
      if (m.weight() != 0) throw PreconditionError("vector field value contains one-form symbols");
    }
  }
}

/// iota_X: degree |X|+1, weight -1, dg -> X(g).
inline Derivation contraction(const Derivation& x) {
  require_vector_field(x);
  const auto& sig = x.signature();
  Derivation out(sig, x.degree() + 1, -1);
  for (const auto& [g, v] : x.values()) out.set(sig->one_form_of(g), v);
  return out;
}

inline Element contract(const Derivation& x, const Element& w) { return contraction(x).apply(w); }

/// L_X = [iota_X, d_dR]: g -> X(g), dg -> (-1)^{|X|} d_dR X(g).
inline Derivation lie_derivative_derivation(const Derivation& x) {
  require_vector_field(x);
  const auto& sig = x.signature();
  Derivation out(sig, x.degree(), 0);
  for (const auto& [g, v] : x.values()) {
    out.set(g, v);
    Element dv = de_rham(v);
    out.set(sig->one_form_of(g), x.odd() ? -dv : dv);
  }
  return out;
}

inline Element lie_derivative(const Derivation& x, const Element& w) { return lie_derivative_derivation(x).apply(w); }

/// beta with d_dR beta = alpha, namely iota_E alpha / (m + p).
inline Element exactness_witness(const Element& alpha) {
  if (alpha.is_zero()) return alpha;
  const int m = alpha.degree();
  const int p = alpha.weight();
  if (m + p == 0) {
    throw CheckFailure("no exactness witness: degree + weight = 0 (" + to_string(alpha) + ")");
  }
  Element closed = de_rham(alpha);
  if (!closed.is_zero()) throw PreconditionError("form is not d_dR-closed: " + to_string(closed));
  Element beta = Scalar::rational(1, m + p) * contract(euler_field(alpha.signature()), alpha);
  Element check = de_rham(beta) - alpha;
  if (!check.is_zero()) throw CheckFailure("exactness witness failed re-check: " + to_string(check));
  return beta;
}

/// Graded-algebra map given on algebra generators, extended to one-form
/// symbols by dg -> d_dR(image of g).
class AlgebraMap {
 public:
  AlgebraMap(SignaturePtr source, SignaturePtr target) : src_(std::move(source)), tgt_(std::move(target)) {}

  [[nodiscard]] const SignaturePtr& source() const { return src_; }
  [[nodiscard]] const SignaturePtr& target() const { return tgt_; }

  void set(GenIndex g, const Element& v) {
    if (g >= src_->algebra_size()) throw PreconditionError("map is specified on algebra generators only");
    if (!same_table(tgt_, v.signature())) throw SignatureError("map value over the wrong table");
    if (!v.has_bidegree(src_->gen(g).degree, 0)) {
      throw ShapeError("image of '" + src_->gen(g).name + "' must have degree " +
                       std::to_string(src_->gen(g).degree) + " and no one-forms");
    }
    values_.insert_or_assign(g, v);
  }
  void set(const std::string& name, const Element& v) { set(src_->index(name), v); }

  /// Unset generators map to zero.
  [[nodiscard]] Element image(GenIndex g) const {
    if (src_->is_one_form(g)) return de_rham(image(src_->one_form_of(g)));
    auto it = values_.find(g);
    return it == values_.end() ? Element(tgt_) : it->second;
  }

  [[nodiscard]] Element apply(const Element& e) const {
    if (!same_table(src_, e.signature())) throw SignatureError("map applied to an element of another table");
    std::map<GenIndex, Element> cache;
    auto img = [&](GenIndex g) -> const Element& {
      auto it = cache.find(g);
      if (it == cache.end()) it = cache.emplace(g, image(g)).first;
      return it->second;
    };
    Element out(tgt_);
    for (const auto& [m, c] : e.numerator()) {
      Element t = Element::constant(tgt_, c);
      for (const auto& [g, k] : m.factors()) t = t * img(g).pow(k);
      out += t;
    }
    if (!e.has_denominator()) return out;
    Element q = apply(invertible_power(src_, e.denominator()));
    auto inv = q.try_inverse();
    if (!inv) throw PreconditionError("map sends a designated invertible to a non-invertible element");
    return out * *inv;
  }

 private:
  SignaturePtr src_;
  SignaturePtr tgt_;
  std::map<GenIndex, Element> values_;
};

}  // namespace shiftsym
