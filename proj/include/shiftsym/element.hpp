#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "shiftsym/errors.hpp"
#include "shiftsym/monomial.hpp"
#include "shiftsym/signature.hpp"

namespace shiftsym {

namespace detail {

inline Monomial make_monomial(const Signature& sig, std::vector<Monomial::Factor> factors) {
  int deg = 0;
  int wt = 0;
  for (const auto& [g, e] : factors) {
    deg += sig.gen(g).degree * static_cast<int>(e);
    wt += sig.gen(g).weight * static_cast<int>(e);
  }
  return Monomial(std::move(factors), deg, wt);
}

inline Terms mul_terms(const Signature& sig, const Terms& a, const Terms& b) {
  Terms out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      auto prod = sig.multiply(ma, mb);
      if (!prod) continue;
      Scalar c = ca * cb;
      if (prod->second) c = -c;
      add_term(out, prod->first, c);
    }
  }
  return out;
}

inline Terms scale_terms(const Terms& a, const Scalar& s) {
  if (s.is_zero()) return {};
  Terms out;
  for (const auto& [m, c] : a) out.emplace_hint(out.end(), m, c * s);
  return out;
}

inline void add_into(Terms& acc, const Terms& b, const Scalar& s = Scalar(1)) {
  for (const auto& [m, c] : b) add_term(acc, m, c * s);
}

inline Terms one_terms() {
  Terms t;
  t.emplace(Monomial(), Scalar(1));
  return t;
}

inline Terms power_terms(const Signature& sig, const Terms& base, std::uint32_t e) {
  Terms out = one_terms();
  for (std::uint32_t i = 0; i < e; ++i) out = mul_terms(sig, out, base);
  return out;
}

/// m / d for monomials when every factor of d divides m; d is a product of
/// even generators so no sign arises.
inline std::optional<Monomial> divide_monomial(const Signature& sig, const Monomial& m, const Monomial& d) {
  std::vector<Monomial::Factor> out;
  const auto& fm = m.factors();
  const auto& fd = d.factors();
  std::size_t j = 0;
  for (const auto& [g, e] : fm) {
    if (j < fd.size() && fd[j].first < g) return std::nullopt;
    if (j < fd.size() && fd[j].first == g) {
      if (fd[j].second > e) return std::nullopt;
      if (e > fd[j].second) out.emplace_back(g, e - fd[j].second);
      ++j;
    } else {
      out.emplace_back(g, e);
    }
  }
  if (j != fd.size()) return std::nullopt;
  return make_monomial(sig, std::move(out));
}

/// Exact quotient num / q for q a polynomial in degree-0 generators, or
/// nothing when q does not divide num. The storage order restricted to a
/// fixed (weight, degree) class is lexicographic, which is compatible with
/// multiplication by base monomials, so a leading-term test decides
/// divisibility by a single divisor.
inline std::optional<Terms> divide_exact(const Signature& sig, Terms num, const Terms& q) {
  if (q.empty()) throw PreconditionError("division by zero polynomial");
  const auto& [lq, cq] = *q.begin();
  Scalar cq_inv = cq.inverse();
  Terms quotient;
  while (!num.empty()) {
    const auto [lp, cp] = *num.begin();
    auto mono = divide_monomial(sig, lp, lq);
    if (!mono) return std::nullopt;
    Scalar c = cp * cq_inv;
    add_term(quotient, *mono, c);
    for (const auto& [mq, c2] : q) {
      auto prod = sig.multiply(*mono, mq);
      if (prod) add_term(num, prod->first, -(c * c2));
    }
  }
  return quotient;
}

}  // namespace detail

/// numerator / prod_j q_j^{den_j}, with q_j the designated invertibles of
/// the signature. Denominators are only ever products of invertibles.
class Element {
 public:
  Element() = default;
  explicit Element(SignaturePtr sig) : sig_(std::move(sig)) {}

  static Element constant(SignaturePtr sig, const Scalar& c) {
    Element e(std::move(sig));
    if (!c.is_zero()) e.num_.emplace(Monomial(), c);
    return e;
  }
  static Element generator(const SignaturePtr& sig, GenIndex g) {
    Element e(sig);
    e.num_.emplace(sig->monomial(g), Scalar(1));
    return e;
  }
  static Element generator(const SignaturePtr& sig, const std::string& name) {
    return generator(sig, sig->index(name));
  }
  static Element monomial(SignaturePtr sig, const Monomial& m, const Scalar& c = Scalar(1)) {
    Element e(std::move(sig));
    if (!c.is_zero()) e.num_.emplace(m, c);
    return e;
  }
  static Element from_terms(SignaturePtr sig, Terms num, std::vector<std::uint32_t> den = {}) {
    Element e(std::move(sig));
    e.num_ = std::move(num);
    e.den_ = std::move(den);
    e.normalize();
    return e;
  }

  [[nodiscard]] const SignaturePtr& signature() const { return sig_; }
  [[nodiscard]] const Terms& numerator() const { return num_; }
  [[nodiscard]] const std::vector<std::uint32_t>& denominator() const { return den_; }
  [[nodiscard]] bool has_denominator() const { return !den_.empty(); }
  [[nodiscard]] bool is_zero() const { return num_.empty(); }
  [[nodiscard]] std::size_t size() const { return num_.size(); }

  /// The value as a scalar when the element is constant.
  [[nodiscard]] std::optional<Scalar> constant_value() const {
    if (num_.empty()) return Scalar(0);
    if (!den_.empty() || num_.size() != 1 || !num_.begin()->first.is_one()) return std::nullopt;
    return num_.begin()->second;
  }

  [[nodiscard]] std::set<std::pair<int, int>> bidegrees() const {
    std::set<std::pair<int, int>> out;
    for (const auto& [m, c] : num_) out.emplace(m.degree(), m.weight());
    return out;
  }
  [[nodiscard]] bool is_homogeneous() const { return bidegrees().size() <= 1; }
  [[nodiscard]] int degree() const {
    auto b = bidegrees();
    if (b.size() != 1) throw ShapeError("element is zero or not homogeneous");
    return b.begin()->first;
  }
  [[nodiscard]] int weight() const {
    auto b = bidegrees();
    if (b.size() != 1) throw ShapeError("element is zero or not homogeneous");
    return b.begin()->second;
  }
  /// True when every term has the given degree (vacuous for zero).
  [[nodiscard]] bool has_bidegree(int degree, int weight) const {
    return std::all_of(num_.begin(), num_.end(),
                       [&](const auto& t) { return t.first.degree() == degree && t.first.weight() == weight; });
  }
  [[nodiscard]] Element component(int degree, int weight) const {
    Element out(sig_);
    for (const auto& [m, c] : num_) {
      if (m.degree() == degree && m.weight() == weight) out.num_.emplace_hint(out.num_.end(), m, c);
    }
    out.den_ = den_;
    out.normalize();
    return out;
  }
  /// Terms of odd total degree (parity of the Koszul sign rule).
  [[nodiscard]] Element parity_part(bool odd) const {
    Element out(sig_);
    for (const auto& [m, c] : num_) {
      if (((m.degree() % 2) != 0) == odd) out.num_.emplace_hint(out.num_.end(), m, c);
    }
    out.den_ = den_;
    out.normalize();
    return out;
  }
  /// True when no term involves a generator outside the degree-0 part of
  /// the algebra (the base ring A(0)).
  [[nodiscard]] bool in_base() const {
    for (const auto& [m, c] : num_) {
      for (const auto& [g, e] : m.factors()) {
        if (g >= sig_->algebra_size() || sig_->gen(g).degree != 0) return false;
      }
    }
    return true;
  }
  [[nodiscard]] bool uses_generator(GenIndex g) const {
    for (const auto& [m, c] : num_) {
      if (m.exponent(g) > 0) return true;
    }
    return false;
  }

  Element operator-() const {
    Element out = *this;
    for (auto& [m, c] : out.num_) c = -c;
    return out;
  }

  friend Element operator+(const Element& a, const Element& b) { return combine(a, b, Scalar(1)); }
  friend Element operator-(const Element& a, const Element& b) { return combine(a, b, Scalar(-1)); }
  Element& operator+=(const Element& b) { return *this = *this + b; }
  Element& operator-=(const Element& b) { return *this = *this - b; }

  friend Element operator*(const Element& a, const Element& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return Element(a.sig_);
    Element out(a.sig_);
    out.num_ = detail::mul_terms(*a.sig_, a.num_, b.num_);
    if (!a.den_.empty() || !b.den_.empty()) {
      out.den_.assign(a.sig_->invertibles().size(), 0);
      for (std::size_t j = 0; j < out.den_.size(); ++j) {
        out.den_[j] = (a.den_.empty() ? 0 : a.den_[j]) + (b.den_.empty() ? 0 : b.den_[j]);
      }
      out.normalize();
    }
    return out;
  }
  friend Element operator*(const Scalar& s, const Element& a) {
    Element out(a.sig_);
    out.num_ = detail::scale_terms(a.num_, s);
    out.den_ = out.num_.empty() ? std::vector<std::uint32_t>{} : a.den_;
    return out;
  }
  friend Element operator*(const Element& a, const Scalar& s) { return s * a; }
  Element& operator*=(const Element& b) { return *this = *this * b; }

  [[nodiscard]] Element pow(std::uint32_t e) const {
    Element out = constant(sig_, Scalar(1));
    Element base = *this;
    while (e > 0) {
      if (e & 1U) out = out * base;
      e >>= 1U;
      if (e > 0) base = base * base;
    }
    return out;
  }

  /// Multiplicative inverse; exists exactly when the element is a nonzero
  /// scalar times a product of designated invertibles.
  [[nodiscard]] std::optional<Element> try_inverse() const {
    if (is_zero()) return std::nullopt;
    const auto& invs = sig_->invertibles();
    std::vector<std::uint32_t> count(invs.size(), 0);
    Terms rest = num_;
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t j = 0; j < invs.size(); ++j) {
        if (auto q = detail::divide_exact(*sig_, rest, invs[j])) {
          rest = std::move(*q);
          ++count[j];
          progress = true;
        }
      }
    }
    if (rest.size() != 1 || !rest.begin()->first.is_one()) return std::nullopt;
    Scalar c = rest.begin()->second.inverse();
    Terms num = detail::one_terms();
    for (std::size_t j = 0; j < den_.size(); ++j) {
      if (den_[j] > 0) num = detail::mul_terms(*sig_, num, detail::power_terms(*sig_, invs[j], den_[j]));
    }
    bool any = std::any_of(count.begin(), count.end(), [](std::uint32_t v) { return v > 0; });
    return from_terms(sig_, detail::scale_terms(num, c), any ? count : std::vector<std::uint32_t>{});
  }
  [[nodiscard]] Element inverse() const {
    auto inv = try_inverse();
    if (!inv) throw PreconditionError("element is not invertible");
    return *inv;
  }

  friend bool operator==(const Element& a, const Element& b) { return (a - b).is_zero(); }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

  /// Substitute values for the degree-0 algebra generators named in the
  /// point; denominators must not vanish there.
  [[nodiscard]] Element evaluate(const std::map<GenIndex, Scalar>& point) const {
    auto eval_terms = [&](const Terms& t) {
      Terms out;
      for (const auto& [m, c] : t) {
        Scalar coeff = c;
        std::vector<Monomial::Factor> keep;
        for (const auto& [g, e] : m.factors()) {
          auto it = point.find(g);
          if (it == point.end()) {
            keep.emplace_back(g, e);
          } else {
            for (std::uint32_t i = 0; i < e; ++i) coeff *= it->second;
          }
        }
        add_term(out, detail::make_monomial(*sig_, std::move(keep)), coeff);
      }
      return out;
    };
    Terms num = eval_terms(num_);
    Terms den = detail::one_terms();
    for (std::size_t j = 0; j < den_.size(); ++j) {
      if (den_[j] > 0) {
        den = detail::mul_terms(*sig_, den, detail::power_terms(*sig_, sig_->invertibles()[j], den_[j]));
      }
    }
    Terms dv = eval_terms(den);
    std::vector<std::uint32_t> keep_den;
    if (dv.size() == 1 && dv.begin()->first.is_one()) {
      num = detail::scale_terms(num, dv.begin()->second.inverse());
    } else if (dv.empty()) {
      throw PreconditionError("denominator vanishes at the point");
    } else {
      throw UnsupportedError("point does not fix every variable of the denominator");
    }
    return from_terms(sig_, std::move(num), std::move(keep_den));
  }

 private:
  static void check_same(const Element& a, const Element& b) {
    if (!same_table(a.sig_, b.sig_)) throw SignatureError("operands use different generator tables");
  }

  Terms scaled_numerator(const std::vector<std::uint32_t>& target) const {
    Terms num = num_;
    const auto& invs = sig_->invertibles();
    for (std::size_t j = 0; j < target.size(); ++j) {
      std::uint32_t have = den_.empty() ? 0 : den_[j];
      if (target[j] > have) num = detail::mul_terms(*sig_, num, detail::power_terms(*sig_, invs[j], target[j] - have));
    }
    return num;
  }

  static Element combine(const Element& a, const Element& b, const Scalar& sb) {
    check_same(a, b);
    if (b.is_zero()) return a;
    if (a.is_zero()) return sb * b;
    Element out(a.sig_);
    if (a.den_.empty() && b.den_.empty()) {
      out.num_ = a.num_;
      detail::add_into(out.num_, b.num_, sb);
      return out;
    }
    std::vector<std::uint32_t> target(a.sig_->invertibles().size(), 0);
    for (std::size_t j = 0; j < target.size(); ++j) {
      target[j] = std::max(a.den_.empty() ? 0U : a.den_[j], b.den_.empty() ? 0U : b.den_[j]);
    }
    out.num_ = a.scaled_numerator(target);
    detail::add_into(out.num_, b.scaled_numerator(target), sb);
    out.den_ = std::move(target);
    out.normalize();
    return out;
  }

  void normalize() {
    if (num_.empty()) {
      den_.clear();
      return;
    }
    bool any = false;
    for (std::size_t j = 0; j < den_.size(); ++j) {
      while (den_[j] > 0) {
        auto q = detail::divide_exact(*sig_, num_, sig_->invertibles()[j]);
        if (!q) break;
        num_ = std::move(*q);
        --den_[j];
      }
      any = any || den_[j] > 0;
    }
    if (!any) den_.clear();
  }

  SignaturePtr sig_;
  Terms num_;
  std::vector<std::uint32_t> den_;
};

inline Element operator*(long s, const Element& a) { return Scalar(s) * a; }

/// The product q_1^{a_1} ... as an element (numerator only).
inline Element invertible_power(const SignaturePtr& sig, const std::vector<std::uint32_t>& exps) {
  Terms t = detail::one_terms();
  for (std::size_t j = 0; j < exps.size(); ++j) {
    if (exps[j] > 0) t = detail::mul_terms(*sig, t, detail::power_terms(*sig, sig->invertibles()[j], exps[j]));
  }
  return Element::from_terms(sig, std::move(t));
}

/// 1 / (q_1^{a_1} ...).
inline Element invertible_power_inverse(const SignaturePtr& sig, const std::vector<std::uint32_t>& exps) {
  return Element::from_terms(sig, detail::one_terms(), exps);
}

}  // namespace shiftsym
