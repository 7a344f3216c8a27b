#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "shiftsym/cdga.hpp"

namespace shiftsym {

/// (omega^0, omega^1, ...) with omega^i of weight p+i and DR-degree
/// k - p - 2i (degree k - i before the weight shift).
struct ClosedForm {
  int k = -1;
  int p = 2;
  std::vector<Element> components;

  [[nodiscard]] Element component(std::size_t i, const SignaturePtr& sig) const {
    return i < components.size() ? components[i] : Element(sig);
  }
};

inline int form_degree(int k, int p, std::size_t i) { return k - p - 2 * static_cast<int>(i); }

inline void require_form_shape(const ClosedForm& w) {
  for (std::size_t i = 0; i < w.components.size(); ++i) {
    int wt = w.p + static_cast<int>(i);
    if (!w.components[i].has_bidegree(form_degree(w.k, w.p, i), wt)) {
      throw ShapeError("component " + std::to_string(i) + " must have degree " +
                       std::to_string(form_degree(w.k, w.p, i)) + " and weight " + std::to_string(wt));
    }
  }
}

inline Report check_closed(const StandardFormCdga& a, const ClosedForm& w) {
  require_form_shape(w);
  const auto& sig = a.signature();
  Report r;
  r.expect_zero("d omega^0", a.d(w.component(0, sig)));
  for (std::size_t i = 0; i < w.components.size(); ++i) {
    r.expect_zero("d_dR omega^" + std::to_string(i) + " + d omega^" + std::to_string(i + 1),
                  de_rham(w.components[i]) + a.d(w.component(i + 1, sig)));
  }
  return r;
}

/// alpha^i of weight p+i and DR-degree k - 1 - p - 2i.
using EquivalenceCertificate = std::vector<Element>;

inline Report check_equivalence(const StandardFormCdga& a, const ClosedForm& w, const ClosedForm& wt,
                                const EquivalenceCertificate& cert) {
  if (w.k != wt.k || w.p != wt.p) throw ShapeError("forms of different degree or weight");
  require_form_shape(w);
  require_form_shape(wt);
  const auto& sig = a.signature();
  for (std::size_t i = 0; i < cert.size(); ++i) {
    if (!cert[i].has_bidegree(form_degree(w.k, w.p, i) - 1, w.p + static_cast<int>(i))) {
      throw ShapeError("certificate component " + std::to_string(i) + " has the wrong degree or weight");
    }
  }
  auto c = [&](std::size_t i) { return i < cert.size() ? cert[i] : Element(sig); };
  Report r;
  r.expect_zero("omega^0 - omega~^0 - d alpha^0", w.component(0, sig) - wt.component(0, sig) - a.d(c(0)));
  std::size_t n = std::max({w.components.size(), wt.components.size(), cert.size()});
  for (std::size_t i = 0; i < n; ++i) {
    r.expect_zero("omega^" + std::to_string(i + 1) + " difference",
                  w.component(i + 1, sig) - wt.component(i + 1, sig) - de_rham(c(i)) - a.d(c(i + 1)));
  }
  return r;
}

/// Phi of degree k+1 in A and phi of weight 1, DR-degree k-1.
struct PhiPhiPair {
  Element Phi;
  Element phi;
};

inline Report check_pair(const StandardFormCdga& a, int k, const PhiPhiPair& pr) {
  if (!pr.Phi.has_bidegree(k + 1, 0)) throw ShapeError("Phi must have degree k+1 and weight 0");
  if (!pr.phi.has_bidegree(k - 1, 1)) throw ShapeError("phi must have weight 1 and degree k-1");
  Report r;
  r.expect_zero("d Phi", a.d(pr.Phi));
  r.expect_zero("d_dR Phi + d phi", de_rham(pr.Phi) + a.d(pr.phi));
  return r;
}

inline ClosedForm cc_to_nc(const StandardFormCdga& a, int k, const PhiPhiPair& pr) {
  require(check_pair(a, k, pr), "(Phi, phi) is not a cocycle");
  ClosedForm w{k, 2, {de_rham(pr.phi)}};
  require(check_closed(a, w), "induced form is not closed");
  return w;
}

enum class CochainKind { NC, CC, PC };

/// Finitely supported cyclic cochain of degree n and weight p: component i
/// has weight p+i and DR-degree n - 2i. NC keeps i >= 0, CC keeps i <= 0.
struct CyclicCochain {
  CochainKind kind = CochainKind::PC;
  int n = 0;
  int p = 0;
  std::map<int, Element> components;

  [[nodiscard]] bool admits(int i) const {
    if (kind == CochainKind::NC) return i >= 0;
    if (kind == CochainKind::CC) return i <= 0;
    return true;
  }
  [[nodiscard]] bool is_zero() const {
    for (const auto& [i, c] : components) {
      if (!c.is_zero()) return false;
    }
    return true;
  }
};

inline CyclicCochain mixed_differential(const StandardFormCdga& a, const CyclicCochain& c) {
  for (const auto& [i, e] : c.components) {
    if (!c.admits(i)) throw ShapeError("component index outside the complex");
    if (i + c.p < 0) throw ShapeError("negative weight component");
    if (!e.has_bidegree(c.n - 2 * i, c.p + i)) throw ShapeError("cochain component has the wrong degree or weight");
  }
  CyclicCochain out{c.kind, c.n + 1, c.p, {}};
  const auto& sig = a.signature();
  std::map<int, Element> acc;
  for (const auto& [i, e] : c.components) {
    auto add = [&](int j, const Element& v) {
      if (!out.admits(j) || v.is_zero()) return;
      auto [it, fresh] = acc.try_emplace(j, Element(sig));
      it->second += v;
    };
    add(i, a.d(e));
    add(i + 1, de_rham(e));
  }
  for (auto& [i, e] : acc) {
    if (!e.is_zero()) out.components.emplace(i, std::move(e));
  }
  return out;
}

/// (Phi, phi) as a weight-1 cochain of CC with n = k-1.
inline CyclicCochain as_cochain(int k, const PhiPhiPair& pr) {
  CyclicCochain c{CochainKind::CC, k - 1, 1, {}};
  if (!pr.Phi.is_zero()) c.components.emplace(-1, pr.Phi);
  if (!pr.phi.is_zero()) c.components.emplace(0, pr.phi);
  return c;
}

/// Block i pairs generators of degree i (rows) with those of degree k-i
/// (columns); entry = iota_{d/dg} iota_{d/dh} omega^0 on the base.
struct PairingMatrices {
  int k = 0;
  std::map<int, Matrix> blocks;
  std::map<int, std::vector<GenIndex>> rows;
  std::map<int, std::vector<GenIndex>> cols;
};

inline PairingMatrices pairing_matrices(const StandardFormCdga& a, int k, const Element& w0) {
  if (!w0.has_bidegree(k - 2, 2)) throw ShapeError("omega^0 must have weight 2 and DR-degree k-2");
  const auto& sig = a.signature();
  PairingMatrices out;
  out.k = k;
  std::map<GenIndex, Element> inner;
  for (int i = k; i <= 0; ++i) {
    auto r = sig->algebra_of_degree(i);
    auto c = sig->algebra_of_degree(k - i);
    Matrix m(sig, r.size(), c.size());
    for (std::size_t col = 0; col < c.size(); ++col) {
      auto it = inner.find(c[col]);
      if (it == inner.end()) it = inner.emplace(c[col], contract(partial_derivation(sig, c[col]), w0)).first;
      for (std::size_t row = 0; row < r.size(); ++row) {
        m.at(row, col) = restrict_to_base(contract(partial_derivation(sig, r[row]), it->second));
      }
    }
    out.blocks.emplace(i, std::move(m));
    out.rows.emplace(i, std::move(r));
    out.cols.emplace(i, std::move(c));
  }
  return out;
}

inline bool is_strictly_nondegenerate(const StandardFormCdga& a, int k, const Element& w0) {
  auto pm = pairing_matrices(a, k, w0);
  for (const auto& [i, m] : pm.blocks) {
    if (!m.square()) return false;
    if (!m.det().try_inverse()) return false;
  }
  return true;
}

inline bool is_nondegenerate_at(const StandardFormCdga& a, int k, const Element& w0, const RationalPoint& p) {
  require_point(a, p);
  auto pm = pairing_matrices(a, k, w0);
  for (const auto& [i, m] : pm.blocks) {
    if (!m.square()) return false;
    if (m.det().evaluate(p.values).is_zero()) return false;
  }
  return true;
}

/// Gauge change by Psi = iota_E phi / k so that iota_E phi' = 0; then
/// k phi' = iota_E omega^0 whenever d_dR phi = omega^0.
inline PhiPhiPair normalize_pair(const StandardFormCdga& a, int k, const Element& w0, const PhiPhiPair& pr) {
  if (k == 0) throw PreconditionError("normalization needs k != 0");
  require(check_pair(a, k, pr), "(Phi, phi) is not a cocycle");
  Derivation e = euler_field(a.signature());
  Element psi = Scalar::rational(1, k) * contract(e, pr.phi);
  PhiPhiPair out{pr.Phi - a.d(psi), pr.phi - de_rham(psi)};
  Report r;
  r.expect_zero("iota_E phi'", contract(e, out.phi));
  if (de_rham(out.phi) == w0) r.expect_zero("k phi' - iota_E omega^0", Scalar(k) * out.phi - contract(e, w0));
  require(r, "pair normalization failed");
  return out;
}

}  // namespace shiftsym
