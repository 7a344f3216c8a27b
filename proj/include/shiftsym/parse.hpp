#pragma once

#include <cctype>
#include <sstream>
#include <string>

#include "shiftsym/element.hpp"

namespace shiftsym {

namespace detail {

class ExpressionParser {
 public:
  ExpressionParser(const SignaturePtr& sig, const std::string& text) : sig_(sig), s_(text) {}

  Element parse() {
    Element e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression '" + s_ + "' at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Element expr() {
    Element acc = term();
    while (true) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }
  Element term() {
    Element acc = unary();
    while (true) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        Element den = unary();
        auto inv = den.try_inverse();
        if (!inv) fail("divisor is not a product of designated invertibles");
        acc = acc * *inv;
      } else {
        return acc;
      }
    }
  }
  Element unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Element power() {
    Element base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a nonnegative integer");
      if (pos_ - start > 4) fail("exponent too large");
      base = base.pow(static_cast<std::uint32_t>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }
  Element atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Element e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class n(s_.substr(start, pos_ - start));
      return Element::constant(sig_, Scalar(mpq_class(n)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "i") {
        if (!sig_->gaussian()) fail("the imaginary unit needs the gaussian field");
        return Element::constant(sig_, Scalar::imaginary_unit());
      }
      auto g = sig_->find(name);
      if (!g) fail("unknown generator '" + name + "'");
      return Element::generator(sig_, *g);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const SignaturePtr& sig_;
  std::string s_;
  std::size_t pos_ = 0;
};

inline std::string monomial_text(const Signature& sig, const Monomial& m) {
  std::string out;
  for (const auto& [g, e] : m.factors()) {
    if (!out.empty()) out += "*";
    out += sig.gen(g).name;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

inline std::string terms_text(const Signature& sig, const Terms& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    bool neg = c.prints_negative();
    Scalar a = neg ? -c : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      out += a.str();
    } else if (a.is_one()) {
      out += monomial_text(sig, m);
    } else {
      out += a.str() + "*" + monomial_text(sig, m);
    }
  }
  return out;
}

}  // namespace detail

inline Element parse_element(const SignaturePtr& sig, const std::string& text) {
  return detail::ExpressionParser(sig, text).parse();
}

/// Canonical text: terms in storage order with explicit signs; a nontrivial
/// denominator prints as (numerator)/(q1^a1*q2^a2...).
inline std::string to_string(const Element& e) {
  if (!e.signature()) return "0";
  const auto& sig = *e.signature();
  std::string num = detail::terms_text(sig, e.numerator());
  if (!e.has_denominator()) return num;
  std::string den;
  for (std::size_t j = 0; j < e.denominator().size(); ++j) {
    std::uint32_t a = e.denominator()[j];
    if (a == 0) continue;
    if (!den.empty()) den += "*";
    den += "(" + detail::terms_text(sig, sig.invertibles()[j]) + ")";
    if (a > 1) den += "^" + std::to_string(a);
  }
  return "(" + num + ")/(" + den + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Element& e) { return os << to_string(e); }

/// Parse a list of invertible expressions against a table that only knows
/// the base variables, for building the final signature.
inline std::vector<Terms> parse_invertibles(Field field, const std::vector<GeneratorDecl>& base,
                                            const std::vector<std::string>& texts) {
  auto pre = Signature::create(field, base);
  std::vector<Terms> out;
  for (const auto& t : texts) {
    Element e = parse_element(pre, t);
    if (e.has_denominator()) throw ParseError("invertible '" + t + "' must be a polynomial");
    out.push_back(e.numerator());
  }
  return out;
}

}  // namespace shiftsym
