#pragma once

// Test-side reference implementations, deliberately naive and independent
// of the kernel's merge-based normaliser.

#include <map>
#include <utility>
#include <vector>

#include "shiftsym/element.hpp"

namespace oracle {

using shiftsym::GenIndex;

struct Word {
  std::vector<GenIndex> letters;
  long coeff = 1;
};

/// Bubble-sort the letters, flipping the sign on every swap of two odd
/// letters; returns coefficient 0 when an odd letter repeats.
inline Word normalise(const shiftsym::Signature& sig, Word w) {
  auto& l = w.letters;
  for (std::size_t pass = 0; pass < l.size(); ++pass) {
    for (std::size_t i = 0; i + 1 < l.size(); ++i) {
      if (l[i] > l[i + 1]) {
        if (sig.gen(l[i]).odd() && sig.gen(l[i + 1]).odd()) w.coeff = -w.coeff;
        std::swap(l[i], l[i + 1]);
      }
    }
  }
  for (std::size_t i = 0; i + 1 < l.size(); ++i) {
    if (l[i] == l[i + 1] && sig.gen(l[i]).odd()) w.coeff = 0;
  }
  return w;
}

inline std::vector<GenIndex> expand(const shiftsym::Monomial& m) {
  std::vector<GenIndex> out;
  for (const auto& [g, e] : m.factors()) {
    for (std::uint32_t k = 0; k < e; ++k) out.push_back(g);
  }
  return out;
}

/// Product of two elements term by term through words.
inline std::map<std::vector<GenIndex>, shiftsym::Scalar> product(const shiftsym::Element& a,
                                                                  const shiftsym::Element& b) {
  std::map<std::vector<GenIndex>, shiftsym::Scalar> out;
  const auto& sig = *a.signature();
  for (const auto& [ma, ca] : a.numerator()) {
    for (const auto& [mb, cb] : b.numerator()) {
      Word w;
      w.letters = expand(ma);
      auto lb = expand(mb);
      w.letters.insert(w.letters.end(), lb.begin(), lb.end());
      w = normalise(sig, w);
      if (w.coeff == 0) continue;
      out[w.letters] += ca * cb * shiftsym::Scalar(w.coeff);
      if (out[w.letters].is_zero()) out.erase(w.letters);
    }
  }
  return out;
}

inline std::map<std::vector<GenIndex>, shiftsym::Scalar> flatten(const shiftsym::Element& e) {
  std::map<std::vector<GenIndex>, shiftsym::Scalar> out;
  for (const auto& [m, c] : e.numerator()) out[expand(m)] = c;
  return out;
}

}  // namespace oracle
