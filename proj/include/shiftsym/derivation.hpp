#pragma once

#include <map>
#include <string>
#include <utility>

#include "shiftsym/element.hpp"

namespace shiftsym {

/// A graded derivation given by its values on generators (zero elsewhere).
/// Values may carry denominators; applying the derivation to a fraction
/// uses D(1/Q) = -D(Q)/Q^2.
class Derivation {
 public:
  Derivation() = default;
  Derivation(SignaturePtr sig, int degree, int weight) : sig_(std::move(sig)), degree_(degree), weight_(weight) {}

  [[nodiscard]] const SignaturePtr& signature() const { return sig_; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] int weight() const { return weight_; }
  [[nodiscard]] const std::map<GenIndex, Element>& values() const { return values_; }

  void set(GenIndex g, const Element& v) {
    if (!same_table(sig_, v.signature())) throw SignatureError("derivation value over a different table");
    const auto& gen = sig_->gen(g);
    if (!v.has_bidegree(gen.degree + degree_, gen.weight + weight_)) {
      throw ShapeError("value on '" + gen.name + "' has the wrong degree or weight for the derivation");
    }
    if (v.is_zero()) {
      values_.erase(g);
    } else {
      values_.insert_or_assign(g, v);
    }
  }
  void set(const std::string& name, const Element& v) { set(sig_->index(name), v); }

  [[nodiscard]] Element value(GenIndex g) const {
    auto it = values_.find(g);
    return it == values_.end() ? Element(sig_) : it->second;
  }
  [[nodiscard]] bool is_zero() const { return values_.empty(); }
  [[nodiscard]] bool odd() const { return (degree_ % 2) != 0; }

  [[nodiscard]] Element apply(const Element& e) const {
    if (!same_table(sig_, e.signature())) throw SignatureError("derivation applied to an element of another table");
    Element out = apply_polynomial(e.numerator());
    if (!e.has_denominator()) return out;
    Element qinv = invertible_power_inverse(sig_, e.denominator());
    out = out * qinv;
    Element dq = apply_polynomial(invertible_power(sig_, e.denominator()).numerator());
    if (dq.is_zero()) return out;
    Element r = -(dq * qinv * qinv);
    Element num = Element::from_terms(sig_, e.numerator());
    Element even = num.parity_part(false);
    Element odd_part = num.parity_part(true);
    out += even * r;
    if (odd()) {
      out -= odd_part * r;
    } else {
      out += odd_part * r;
    }
    return out;
  }

  /// Equality as derivations: same degree data and same value on every
  /// generator of the table.
  friend bool operator==(const Derivation& a, const Derivation& b) {
    if (a.degree_ != b.degree_ || a.weight_ != b.weight_) return a.is_zero() && b.is_zero();
    for (GenIndex g = 0; g < a.sig_->size(); ++g) {
      if (a.value(g) != b.value(g)) return false;
    }
    return true;
  }

  friend Derivation operator+(const Derivation& a, const Derivation& b) {
    Derivation out(a.sig_, a.degree_, a.weight_);
    for (GenIndex g = 0; g < a.sig_->size(); ++g) out.set(g, a.value(g) + b.value(g));
    return out;
  }
  friend Derivation operator*(const Scalar& s, const Derivation& a) {
    Derivation out(a.sig_, a.degree_, a.weight_);
    for (const auto& [g, v] : a.values_) out.set(g, s * v);
    return out;
  }

 private:
  Element apply_polynomial(const Terms& terms) const {
    Element out(sig_);
    for (const auto& [m, c] : terms) {
      const auto& f = m.factors();
      int prefix_degree = 0;
      for (std::size_t k = 0; k < f.size(); ++k) {
        const auto [g, e] = f[k];
        auto it = values_.find(g);
        if (it != values_.end()) {
          std::vector<Monomial::Factor> pre(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(k));
          std::vector<Monomial::Factor> post(f.begin() + static_cast<std::ptrdiff_t>(k) + 1, f.end());
          if (e > 1) pre.emplace_back(g, e - 1);  // only even generators repeat, so g^{e-1} commutes
          Scalar coeff = c * Scalar(static_cast<long>(e));
          if (odd() && (prefix_degree % 2 != 0)) coeff = -coeff;
          Element left = Element::monomial(sig_, detail::make_monomial(*sig_, std::move(pre)), coeff);
          Element right = Element::monomial(sig_, detail::make_monomial(*sig_, std::move(post)));
          out += left * it->second * right;
        }
        prefix_degree += sig_->gen(g).degree * static_cast<int>(e);
      }
    }
    return out;
  }

  SignaturePtr sig_;
  int degree_ = 0;
  int weight_ = 0;
  std::map<GenIndex, Element> values_;
};

inline Element apply_derivation(const Derivation& d, const Element& e) { return d.apply(e); }

/// [X, Y] = XY - (-1)^{|X||Y|} YX, evaluated on every generator.
inline Derivation lie_bracket(const Derivation& x, const Derivation& y) {
  if (!same_table(x.signature(), y.signature())) throw SignatureError("bracket of derivations on different tables");
  Derivation out(x.signature(), x.degree() + y.degree(), x.weight() + y.weight());
  bool minus = !(x.odd() && y.odd());
  for (GenIndex g = 0; g < x.signature()->size(); ++g) {
    Element xy = x.apply(y.value(g));
    Element yx = y.apply(x.value(g));
    out.set(g, minus ? xy - yx : xy + yx);
  }
  return out;
}

/// Graded commutator of two derivations applied to an element without
/// first building the bracket.
inline Element commutator_apply(const Derivation& a, const Derivation& b, const Element& e) {
  Element ab = a.apply(b.apply(e));
  Element ba = b.apply(a.apply(e));
  return (a.odd() && b.odd()) ? ab + ba : ab - ba;
}

/// The derivation sending g to 1 and every other generator to 0; on odd g
/// this is the left partial (g is moved to the front before removal).
inline Derivation partial_derivation(const SignaturePtr& sig, GenIndex g) {
  Derivation d(sig, -sig->gen(g).degree, -sig->gen(g).weight);
  d.set(g, Element::constant(sig, Scalar(1)));
  return d;
}

inline Element partial(const SignaturePtr& sig, GenIndex g, const Element& e) {
  return partial_derivation(sig, g).apply(e);
}
inline Element partial(const Element& e, const std::string& name) {
  return partial(e.signature(), e.signature()->index(name), e);
}

/// Euler vector field on the algebra: E(g) = |g| g.
inline Derivation euler_field(const SignaturePtr& sig) {
  Derivation d(sig, 0, 0);
  for (GenIndex g = 0; g < sig->algebra_size(); ++g) {
    int deg = sig->gen(g).degree;
    if (deg != 0) d.set(g, Scalar(deg) * Element::generator(sig, g));
  }
  return d;
}

}  // namespace shiftsym
