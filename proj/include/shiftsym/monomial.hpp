#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "shiftsym/scalar.hpp"

namespace shiftsym {

using GenIndex = std::uint32_t;

/// A product of generators in table order, g_{i1}^{e1} g_{i2}^{e2} ...
/// with i1 < i2 < ... and every odd generator at exponent one. The
/// degree and weight are cached so that ordering needs no table lookup.
class Monomial {
 public:
  using Factor = std::pair<GenIndex, std::uint32_t>;

  Monomial() = default;
  Monomial(std::vector<Factor> factors, int degree, int weight)
      : factors_(std::move(factors)), degree_(degree), weight_(weight) {}

  [[nodiscard]] const std::vector<Factor>& factors() const { return factors_; }
  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] int weight() const { return weight_; }
  [[nodiscard]] bool is_one() const { return factors_.empty(); }

  [[nodiscard]] std::uint32_t exponent(GenIndex g) const {
    for (const auto& [idx, e] : factors_) {
      if (idx == g) return e;
      if (idx > g) break;
    }
    return 0;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

 private:
  std::vector<Factor> factors_;
  int degree_ = 0;
  int weight_ = 0;
};

/// Term order used for storage and printing: weight ascending, degree
/// descending, then exponent vectors compared lexicographically in table
/// order with the larger exponent first.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t i = 0;
    for (; i < fa.size() && i < fb.size(); ++i) {
      if (fa[i].first != fb[i].first) return fa[i].first < fb[i].first;
      if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
    }
    return i < fa.size() && i == fb.size();
  }
};

/// Sparse polynomial body: canonical monomial -> nonzero coefficient.
using Terms = std::map<Monomial, Scalar, MonomialOrder>;

inline void add_term(Terms& terms, const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

}  // namespace shiftsym
