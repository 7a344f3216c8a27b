#pragma once

#include <string>
#include <vector>

#include "shiftsym/forms.hpp"

namespace shiftsym {

/// Strictly nondegenerate omega^0 together with the inverse diagonal
/// blocks needed to solve iota_X omega^0 = d_dR f.
class SymplecticSolver {
 public:
  SymplecticSolver(const StandardFormCdga& a, int k, Element w0) : a_(a), k_(k), w0_(std::move(w0)) {
    pm_ = pairing_matrices(a_, k_, w0_);
    const auto& sig = a_.signature();
    for (const auto& [i, m] : pm_.blocks) {
      if (!m.square()) throw PreconditionError("omega^0 is not strictly nondegenerate: block " + std::to_string(i) + " is not square");
      auto inv = m.det().try_inverse();
      if (!inv) throw PreconditionError("omega^0 is not strictly nondegenerate: block " + std::to_string(i) + " has non-invertible determinant");
      // N = block^T, stored as N^{-1} = adj(N) / det
      Matrix n = m.transpose();
      Matrix adj = n.adjugate();
      Matrix ninv(sig, n.rows(), n.cols());
      for (std::size_t r = 0; r < n.rows(); ++r) {
        for (std::size_t c = 0; c < n.cols(); ++c) ninv.at(r, c) = adj.at(r, c) * *inv;
      }
      inverse_.emplace(i, std::move(ninv));
    }
    for (GenIndex g = 0; g < sig->algebra_size(); ++g) inner_.push_back(contract(partial_derivation(sig, g), w0_));
  }

  [[nodiscard]] const StandardFormCdga& algebra() const { return a_; }
  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] const Element& omega0() const { return w0_; }

  /// P_{hg} = iota_{d/dh} iota_{d/dg} omega^0.
  [[nodiscard]] Element pairing(GenIndex h, GenIndex g) const {
    return contract(partial_derivation(a_.signature(), h), inner_[g]);
  }

  /// The unique X with iota_X omega^0 = d_dR f, re-verified by substitution.
  [[nodiscard]] Derivation hamiltonian_vector_field(const Element& f) const {
    const auto& sig = a_.signature();
    if (!same_table(sig, f.signature())) throw SignatureError("function over another table");
    if (f.is_zero()) return Derivation(sig, -k_, 0);
    if (!f.has_bidegree(f.degree(), 0)) throw ShapeError("function must lie in A");
    const int fd = f.degree();
    Derivation x(sig, fd - k_, 0);
    // solve block by block, highest generator degree first; rows of degree
    // k-a only see unknowns of degree >= a
    for (int a = 0; a >= k_; --a) {
      const int i = k_ - a;
      const auto& rows = pm_.rows.at(i);
      const auto& cols = pm_.cols.at(i);  // the unknowns, degree a
      if (cols.empty()) continue;
      const bool flip = ((1 - i) * (a + fd - k_)) % 2 != 0;
      std::vector<Element> rhs;
      for (GenIndex h : rows) {
        Element r = partial(sig, h, f);
        for (const auto& [g, v] : x.values()) {
          const bool s = ((1 - i) * (sig->gen(g).degree + fd - k_)) % 2 != 0;
          Element t = v * pairing(h, g);
          r = s ? r + t : r - t;
        }
        rhs.push_back(flip ? -r : r);
      }
      const Matrix& ninv = inverse_.at(i);
      for (std::size_t c = 0; c < cols.size(); ++c) {
        Element v(sig);
        for (std::size_t r = 0; r < rows.size(); ++r) v += rhs[r] * ninv.at(r, c);
        x.set(cols[c], v);
      }
    }
    Element check = contract(x, w0_) - de_rham(f);
    if (!check.is_zero()) throw CheckFailure("Hamiltonian vector field failed substitution: " + to_string(check));
    return x;
  }

  /// {f, g} = (-1)^{|f|-k-1} X_f(g).
  [[nodiscard]] Element bracket(const Element& f, const Element& g) const {
    if (f.is_zero()) return Element(a_.signature());
    Element v = hamiltonian_vector_field(f).apply(g);
    return ((f.degree() - k_ - 1) % 2 != 0) ? -v : v;
  }

 private:
  StandardFormCdga a_;
  int k_;
  Element w0_;
  PairingMatrices pm_;
  std::map<int, Matrix> inverse_;
  std::vector<Element> inner_;
};

inline Derivation hamiltonian_vector_field(const StandardFormCdga& a, int k, const Element& w0, const Element& f) {
  return SymplecticSolver(a, k, w0).hamiltonian_vector_field(f);
}

inline Element poisson_bracket(const StandardFormCdga& a, int k, const Element& w0, const Element& f,
                               const Element& g) {
  return SymplecticSolver(a, k, w0).bracket(f, g);
}

struct PoissonTriple {
  Element f;
  Element g;
  Element h;
};

/// Graded antisymmetry, Jacobi and Leibniz for the (-k)-Poisson bracket.
inline Report check_poisson_axioms(const SymplecticSolver& s, const std::vector<PoissonTriple>& samples) {
  const int n = -s.k();
  auto par = [](int v) { return v % 2 != 0; };
  Report r;
  for (std::size_t t = 0; t < samples.size(); ++t) {
    const auto& [f, g, h] = samples[t];
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    const int df = f.degree();
    const int dg = g.degree();
    const std::string tag = "#" + std::to_string(t) + " ";
    Element fg = s.bracket(f, g);
    Element gf = s.bracket(g, f);
    bool e1 = par((df + n) * (dg + n));
    r.expect_zero(tag + "antisymmetry", e1 ? fg - gf : fg + gf);
    Element lhs = s.bracket(f, s.bracket(g, h));
    Element rhs1 = s.bracket(fg, h);
    Element rhs2 = s.bracket(g, s.bracket(f, h));
    r.expect_zero(tag + "jacobi", lhs - rhs1 - (e1 ? -rhs2 : rhs2));
    Element der = s.bracket(f, g * h) - fg * h;
    Element tail = g * s.bracket(f, h);
    r.expect_zero(tag + "leibniz", par((df + n) * dg) ? der + tail : der - tail);
  }
  return r;
}

/// The three sub-checks of the square-zero criterion for a Hamiltonian
/// differential: {H,H} = 0, X_H = d on generators, d omega^0 = 0.
struct HamiltonianReport {
  Report master;
  Report matches_d;
  Report closed;
  [[nodiscard]] bool ok() const { return master.ok() && matches_d.ok() && closed.ok(); }
};

inline HamiltonianReport differential_is_hamiltonian(const StandardFormCdga& a, int k, const Element& w0,
                                                     const Element& h) {
  if (!h.is_zero() && !h.has_bidegree(k + 1, 0)) throw ShapeError("H must have degree k+1");
  SymplecticSolver s(a, k, w0);
  HamiltonianReport out;
  Element hh = s.bracket(h, h);
  out.master.expect_zero("{H,H}", hh);
  if (!hh.is_zero() && k == -2 && hh.constant_value()) {
    out.master.notes.push_back("{H,H} is a nonzero constant");
  }
  Derivation x = s.hamiltonian_vector_field(h);
  const auto& sig = a.signature();
  for (GenIndex g = 0; g < sig->algebra_size(); ++g) {
    out.matches_d.expect_zero("X_H - d on " + sig->gen(g).name, x.value(g) - a.differential().value(g));
  }
  // d omega^0 = L_{X_H} omega^0 when X_H = d
  out.closed.expect_zero("d omega^0", a.d(w0));
  out.closed.expect_zero("L_{X_H} omega^0", lie_derivative(x, w0));
  return out;
}

struct HamiltonianPackage {
  StandardFormCdga algebra;
  int k = 0;
  Element omega0;
  Element H;
  Derivation X;
};

/// H = k Phi after normalizing iota_E phi = 0; checks iota_Q omega^0 = d_dR H
/// with Q the differential.
inline HamiltonianPackage extract_hamiltonian(const StandardFormCdga& a, int k, const Element& w0,
                                              const PhiPhiPair& pr) {
  SymplecticSolver s(a, k, w0);
  PhiPhiPair n = normalize_pair(a, k, w0, pr);
  Element h = Scalar(k) * n.Phi;
  Report r;
  r.expect_zero("iota_Q omega^0 - d_dR H", contract(a.differential(), w0) - de_rham(h));
  require(r, "Hamiltonian extraction failed");
  return {a, k, w0, h, s.hamiltonian_vector_field(h)};
}

/// iota_Q = -[iota_E, d] applied to w, returned as the difference.
inline Element iota_q_identity_residue(const StandardFormCdga& a, const Element& w) {
  Derivation ie = contraction(euler_field(a.signature()));
  Element lhs = contract(a.differential(), w);
  Element rhs = -commutator_apply(ie, a.total_differential(), w);
  return lhs - rhs;
}

}  // namespace shiftsym
