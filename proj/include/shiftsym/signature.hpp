#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "shiftsym/errors.hpp"
#include "shiftsym/monomial.hpp"

namespace shiftsym {

enum class Field { Rational, Gaussian };

/// One entry of the generator table. Algebra generators have weight 0;
/// the one-form symbol d<name> of an algebra generator of degree m sits at
/// degree m-1 and weight 1.
struct Generator {
  std::string name;
  int degree = 0;
  int weight = 0;
  int tier = 0;
  bool one_form = false;
  GenIndex partner = 0;  // the one-form of an algebra generator and vice versa

  [[nodiscard]] bool odd() const { return (degree % 2) != 0; }
};

struct GeneratorDecl {
  std::string name;
  int degree = 0;
};

/// Generator table shared by every value of one algebra and its de Rham
/// algebra. Indices [0, n) are the algebra generators in declaration order,
/// [n, 2n) their one-form symbols in the same order.
class Signature {
 public:
  static std::shared_ptr<const Signature> create(Field field, const std::vector<GeneratorDecl>& algebra,
                                                 std::vector<Terms> invertibles = {}) {
    auto sig = std::shared_ptr<Signature>(new Signature());
    sig->field_ = field;
    sig->n_algebra_ = algebra.size();
    for (const auto& decl : algebra) {
      if (!is_identifier(decl.name)) throw ShapeError("invalid generator name '" + decl.name + "'");
      if (decl.name == "i") throw ShapeError("generator name 'i' is reserved for the imaginary unit");
      if (decl.degree > 0) throw ShapeError("generator '" + decl.name + "' has positive degree");
      Generator g;
      g.name = decl.name;
      g.degree = decl.degree;
      g.weight = 0;
      g.tier = -decl.degree;
      g.one_form = false;
      g.partner = static_cast<GenIndex>(sig->gens_.size() + algebra.size());
      sig->gens_.push_back(std::move(g));
    }
    for (std::size_t a = 0; a < algebra.size(); ++a) {
      Generator g;
      g.name = "d" + algebra[a].name;
      g.degree = algebra[a].degree - 1;
      g.weight = 1;
      g.tier = -algebra[a].degree;
      g.one_form = true;
      g.partner = static_cast<GenIndex>(a);
      sig->gens_.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < sig->gens_.size(); ++i) {
      if (!sig->by_name_.emplace(sig->gens_[i].name, static_cast<GenIndex>(i)).second) {
        throw ShapeError("generator name '" + sig->gens_[i].name + "' is ambiguous");
      }
    }
    for (auto& inv : invertibles) {
      if (inv.empty()) throw ShapeError("designated invertible is zero");
      if (inv.size() == 1 && inv.begin()->first.is_one()) throw ShapeError("designated invertible is a constant");
      for (const auto& [m, c] : inv) {
        for (const auto& [g, e] : m.factors()) {
          if (g >= sig->n_algebra_ || sig->gens_[g].degree != 0) {
            throw ShapeError("designated invertible must be a polynomial in degree-0 generators");
          }
        }
      }
    }
    sig->invertibles_ = std::move(invertibles);
    return sig;
  }

  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] bool gaussian() const { return field_ == Field::Gaussian; }
  [[nodiscard]] std::size_t size() const { return gens_.size(); }
  [[nodiscard]] std::size_t algebra_size() const { return n_algebra_; }
  [[nodiscard]] const Generator& gen(GenIndex g) const { return gens_.at(g); }
  [[nodiscard]] const std::vector<Generator>& generators() const { return gens_; }
  [[nodiscard]] GenIndex one_form_of(GenIndex g) const { return gens_.at(g).partner; }
  [[nodiscard]] bool is_one_form(GenIndex g) const { return gens_.at(g).one_form; }
  [[nodiscard]] const std::vector<Terms>& invertibles() const { return invertibles_; }

  [[nodiscard]] std::optional<GenIndex> find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] GenIndex index(const std::string& name) const {
    auto g = find(name);
    if (!g) throw PreconditionError("unknown generator '" + name + "'");
    return *g;
  }

  /// Algebra generators of the given degree, in table order.
  [[nodiscard]] std::vector<GenIndex> algebra_of_degree(int degree) const {
    std::vector<GenIndex> out;
    for (GenIndex g = 0; g < n_algebra_; ++g) {
      if (gens_[g].degree == degree) out.push_back(g);
    }
    return out;
  }
  [[nodiscard]] int min_degree() const {
    int m = 0;
    for (GenIndex g = 0; g < n_algebra_; ++g) m = std::min(m, gens_[g].degree);
    return m;
  }

  [[nodiscard]] Monomial monomial(GenIndex g, std::uint32_t exp = 1) const {
    if (exp == 0) return {};
    const auto& gen = gens_.at(g);
    if (gen.odd() && exp > 1) throw PreconditionError("odd generator raised to a power above one");
    return Monomial({{g, exp}}, gen.degree * static_cast<int>(exp), gen.weight * static_cast<int>(exp));
  }

  /// Product of two canonical monomials. Returns nothing when an odd
  /// generator repeats; otherwise the canonical product and whether the
  /// Koszul sign of sorting it is negative.
  [[nodiscard]] std::optional<std::pair<Monomial, bool>> multiply(const Monomial& a, const Monomial& b) const {
    if (a.is_one()) return std::make_pair(b, false);
    if (b.is_one()) return std::make_pair(a, false);
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::vector<Monomial::Factor> out;
    out.reserve(fa.size() + fb.size());
    // odd factors of `a` with index above the current `b` factor; each one
    // a moving odd `b` factor passes contributes a transposition.
    std::size_t odd_a_total = 0;
    for (const auto& f : fa) odd_a_total += gens_[f.first].odd() ? 1 : 0;
    std::size_t odd_a_passed = 0;
    bool negative = false;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < fa.size() || j < fb.size()) {
      if (j == fb.size() || (i < fa.size() && fa[i].first < fb[j].first)) {
        if (gens_[fa[i].first].odd()) ++odd_a_passed;
        out.push_back(fa[i++]);
      } else if (i == fa.size() || fb[j].first < fa[i].first) {
        if (gens_[fb[j].first].odd() && ((odd_a_total - odd_a_passed) % 2 == 1)) negative = !negative;
        out.push_back(fb[j++]);
      } else {
        GenIndex g = fa[i].first;
        if (gens_[g].odd()) return std::nullopt;
        out.emplace_back(g, fa[i].second + fb[j].second);
        ++i;
        ++j;
      }
    }
    return std::make_pair(Monomial(std::move(out), a.degree() + b.degree(), a.weight() + b.weight()), negative);
  }

  [[nodiscard]] bool structurally_equal(const Signature& o) const {
    if (field_ != o.field_ || n_algebra_ != o.n_algebra_ || invertibles_ != o.invertibles_) return false;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (gens_[i].name != o.gens_[i].name || gens_[i].degree != o.gens_[i].degree) return false;
    }
    return true;
  }

  static bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
  }

 private:
  Signature() = default;

  Field field_ = Field::Rational;
  std::size_t n_algebra_ = 0;
  std::vector<Generator> gens_;
  std::unordered_map<std::string, GenIndex> by_name_;
  std::vector<Terms> invertibles_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

inline bool same_table(const SignaturePtr& a, const SignaturePtr& b) {
  return a == b || (a && b && a->structurally_equal(*b));
}

}  // namespace shiftsym
