#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shiftsym/darboux.hpp"

namespace shiftsym {

using Rng = std::mt19937_64;

inline long random_coefficient(Rng& rng) {
  long c = static_cast<long>(rng() % 7) - 3;
  return c == 0 ? 1 : c;
}

/// Sum of `terms` random words of length <= len in the first n generators
/// (all generators, or the algebra ones only).
inline Element random_element(const SignaturePtr& s, Rng& rng, int terms = 3, int len = 3, bool algebra_only = false) {
  const std::size_t n = algebra_only ? s->algebra_size() : s->size();
  Element out(s);
  for (int t = 0; t < terms; ++t) {
    Element m = Element::constant(s, Scalar(static_cast<long>(rng() % 7) - 3));
    int l = static_cast<int>(rng() % static_cast<std::uint64_t>(len + 1));
    for (int k = 0; k < l; ++k) m = m * Element::generator(s, static_cast<GenIndex>(rng() % n));
    out += m;
  }
  return out;
}

/// The first nonzero bidegree component of a random element.
inline Element random_homogeneous(const SignaturePtr& s, Rng& rng, bool algebra_only = false) {
  for (;;) {
    Element e = random_element(s, rng, 3, 3, algebra_only);
    auto b = e.bidegrees();
    if (b.empty()) continue;
    Element c = e.component(b.begin()->first, b.begin()->second);
    if (!c.is_zero()) return c;
  }
}

/// Random element of A of the given degree (weight 0); zero if a few
/// dozen draws find no word of that degree.
inline Element random_of_degree(const SignaturePtr& s, Rng& rng, int degree, int terms = 2) {
  Element out(s);
  int found = 0;
  for (int tries = 0; tries < 60 && found < terms; ++tries) {
    Element e = random_element(s, rng, 2, 3, true).component(degree, 0);
    if (!e.is_zero()) {
      out += e;
      ++found;
    }
  }
  return out;
}

/// Homogeneous vector field of degree dx with random values.
inline Derivation random_vector_field(const SignaturePtr& s, Rng& rng, int dx) {
  Derivation x(s, dx, 0);
  for (GenIndex g = 0; g < s->algebra_size(); ++g) x.set(g, random_of_degree(s, rng, s->gen(g).degree + dx, 1));
  return x;
}

/// Three algebra generators with degrees drawn from [-3, 0]; the first is
/// always a base variable.
inline SignaturePtr random_table(Rng& rng) {
  std::vector<GeneratorDecl> g{{"a", 0}};
  g.push_back({"b", -static_cast<int>(rng() % 4)});
  g.push_back({"c", -static_cast<int>(rng() % 4)});
  return Signature::create(Field::Rational, g);
}

/// Polynomial text in the given variables, degree <= max_deg. Terms have
/// distinct total degrees, so the result is never zero.
inline std::string random_poly(Rng& rng, const std::vector<std::string>& vars, int terms = 2, int max_deg = 2) {
  std::vector<int> degs;
  for (int d = 0; d <= max_deg; ++d) degs.push_back(d);
  std::string out;
  for (int t = 0; t < terms && !degs.empty(); ++t) {
    std::string term = std::to_string(random_coefficient(rng));
    std::size_t pick = rng() % degs.size();
    int deg = degs[pick];
    degs.erase(degs.begin() + static_cast<long>(pick));
    for (int k = 0; k < deg; ++k) term += "*" + vars[rng() % vars.size()];
    out += (t == 0 ? "" : " + ") + std::string("(") + term + ")";
  }
  return out;
}

namespace detail {

inline std::vector<std::string> base_names(std::size_t n) {
  static const char* names[] = {"a", "b", "c"};
  return {names, names + n};
}

inline std::string par(const std::string& s) { return "(" + s + ")"; }

}  // namespace detail

/// A spec of shift k whose H solves the master equation by construction.
/// `variant` picks among the shapes available for that k.
inline DarbouxSpec random_spec(int k, Rng& rng, int variant = 0) {
  using detail::par;
  DarbouxSpec s;
  const std::size_t m0 = 1 + rng() % 2;
  s.base = detail::base_names(m0);
  auto poly = [&] { return par(random_poly(rng, s.base)); };
  switch (k) {
    case -1: {
      s.family = Family::Odd;
      s.base = detail::base_names(1 + rng() % 3);
      s.ranks = {s.base.size()};
      s.H = random_poly(rng, s.base, 3, 3);
      return s;
    }
    case -2: {
      std::string p = poly();
      const int v = variant % 3;
      if (v == 2) {
        // s_2 = i s_1 kills s_1^2 + s_2^2
        s.family = Family::StrongTwo;
        s.field = Field::Gaussian;
        s.ranks = {m0, 2};
        s.H = "z1_1*" + p + " + i*z1_2*" + p;
      } else {
        s.family = Family::WeakTwo;
        s.ranks = {m0, 2};
        std::string q = v == 0 ? "1" : "1 + a^2";
        s.q = {q, "-" + par(q)};
        s.H = "z1_1*" + p + " + z1_2*" + p;
      }
      return s;
    }
    case -3: {
      // t = [v]x and s = f v, so t s = f v x v = 0
      s.family = Family::Odd;
      s.d = 1;
      s.ranks = {m0, 3};
      std::string v[3] = {poly(), poly(), poly()};
      std::string f = poly();
      s.H = "y2_1*" + f + "*" + v[0] + " + y2_2*" + f + "*" + v[1] + " + y2_3*" + f + "*" + v[2] + " - x1_1*x1_2*" +
            v[2] + " + x1_1*x1_3*" + v[1] + " - x1_2*x1_3*" + v[0];
      return s;
    }
    case -4:
    case -5: {
      // a = g (s_2, -s_1) so that a . s = 0
      s.family = k == -4 ? Family::DivFour : Family::Odd;
      s.d = k == -4 ? 1 : 2;
      s.ranks = {m0, 2, 1};
      std::string s1 = poly(), s2 = poly(), g = poly();
      std::string top = k == -4 ? "y3_" : "y4_";
      std::string w = k == -4 ? "x2_1" : "y3_1";
      s.H = top + "1*" + s1 + " + " + top + "2*" + s2 + " + x1_1*" + w + "*" + g + "*" + s2 + " - x1_2*" + w + "*" + g +
            "*" + s1;
      return s;
    }
    case -6: {
      s.d = 1;
      if (variant % 2 == 0) {
        s.family = Family::StrongTwo;
        s.ranks = {m0, 2, 1, 0};
        std::string s1 = poly(), s2 = poly(), g = poly();
        s.H = "y5_1*" + s1 + " + y5_2*" + s2 + " + x1_1*y4_1*" + g + "*" + s2 + " - x1_2*y4_1*" + g + "*" + s1;
      } else {
        s.family = Family::WeakTwo;
        s.ranks = {m0, 0, 1, 2};
        s.q = {"1", "-1"};
        std::string c = poly();
        s.H = "z3_1*x2_1*" + c + " + z3_2*x2_1*" + c;
      }
      return s;
    }
    default:
      throw UnsupportedError("no structured spec family for k = " + std::to_string(k));
  }
}

/// The generation suite: every shift from -1 to -6 and every variant.
inline std::vector<DarbouxSpec> structured_specs(Rng& rng) {
  std::vector<DarbouxSpec> out;
  for (int k = -1; k >= -6; --k) {
    const int variants = k == -2 ? 6 : (k == -6 ? 4 : 3);
    for (int v = 0; v < variants; ++v) out.push_back(random_spec(k, rng, v));
  }
  return out;
}

/// Adds 1 to the coefficient of a random term of H.
inline DarbouxSpec perturb(const DarbouxSpec& spec, Rng& rng) {
  Roster r = roster(spec);
  const auto& terms = r.H.numerator();
  if (terms.empty()) throw PreconditionError("cannot perturb H = 0");
  auto it = terms.begin();
  std::advance(it, static_cast<long>(rng() % terms.size()));
  DarbouxSpec out = spec;
  out.H = to_string(r.H + Element::monomial(r.sig, it->first));
  return out;
}

}  // namespace shiftsym
