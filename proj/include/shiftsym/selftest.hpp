#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "shiftsym/dcrit.hpp"
#include "shiftsym/hamilton.hpp"
#include "shiftsym/random.hpp"

namespace shiftsym {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<std::string> details;
};

namespace selftest_detail {

/// Collects pass/fail counts and the first few failure lines.
struct Tally {
  long checks = 0;
  long failures = 0;
  std::vector<std::string> lines;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (lines.size() < 8) lines.push_back("FAILED " + what);
    }
  }
  void expect(const Report& r, const std::string& what) {
    ++checks;
    if (!r.ok()) {
      ++failures;
      if (lines.size() < 8) lines.push_back("FAILED " + what + "\n" + r.str());
    }
  }
  /// Runs f and turns a library error into a failure line.
  void guard(const std::string& what, const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception& e) {
      expect(false, what + ": " + e.what());
    }
  }
  CriterionResult result(int id, std::string title, std::string summary) {
    CriterionResult r{id, std::move(title), failures == 0 && checks > 0, {}};
    r.details.push_back(summary + "; " + std::to_string(checks) + " checks, " + std::to_string(failures) + " failed");
    for (auto& l : lines) r.details.push_back(std::move(l));
    return r;
  }
};

}  // namespace selftest_detail

/// The identity, same-chart and two-chart certificates.
inline std::vector<std::pair<std::string, ComparisonCertificate>> example_certificates() {
  std::vector<std::pair<std::string, ComparisonCertificate>> out;
  ComparisonCertificate id;
  id.A = {Field::Rational, {"x1", "x2"}, {}, "x1*x2 + x1^3"};
  id.B = id.A;
  id.C = {{"x1", "x2"}, {}, {{"y1_1", -1}, {"y1_2", -1}}, {{"y1_1", "x2 + 3*x1^2"}, {"y1_2", "x1"}}};
  id.alpha = {{"x1", "x1"}, {"x2", "x2"}, {"y1_1", "y1_1"}, {"y1_2", "y1_2"}};
  id.beta = id.alpha;
  out.emplace_back("identity", id);

  ComparisonCertificate same;
  same.A = {Field::Rational, {"x"}, {}, "x^3"};
  same.B = same.A;
  same.C = {{"x"}, {}, {{"y1_1", -1}}, {{"y1_1", "3*x^2"}}};
  same.alpha = {{"x", "x"}, {"y1_1", "y1_1"}};
  same.beta = same.alpha;
  out.emplace_back("same chart", same);

  // H^ = H + (3x^2)^2 (1 + x); built backwards from M = -(1 + x).
  ComparisonCertificate two;
  two.A = {Field::Rational, {"x"}, {}, "x^3"};
  two.B = {Field::Rational, {"x"}, {}, "x^3 + 9*x^4 + 9*x^5"};
  two.C = {{"x"}, {}, {{"e", -1}}, {{"e", "3*x^2"}}};
  two.alpha = {{"x", "x"}, {"y1_1", "e"}};
  two.beta = {{"x", "x"}, {"y1_1", "(1 + 12*x + 15*x^2)*e"}};
  two.Psi = "(3*x^2 + 3*x^3)*e";
  two.psi = "-(1 + x)*e*de";
  out.emplace_back("two charts", two);
  return out;
}

inline CriterionResult criterion_derivation_identities(std::uint64_t seed) {
  selftest_detail::Tally t;
  Rng rng(seed);
  int triples = 0;
  while (triples < 60) {
    auto s = random_table(rng);
    auto x = random_vector_field(s, rng, static_cast<int>(rng() % 4) - 2);
    auto y = random_vector_field(s, rng, static_cast<int>(rng() % 4) - 2);
    Element w = random_element(s, rng, 3, 3);
    if (x.is_zero() || y.is_zero() || w.is_zero()) continue;
    ++triples;
    const std::string tag = "triple " + std::to_string(triples);
    t.guard(tag, [&] {
      auto lx = lie_derivative_derivation(x);
      auto ly = lie_derivative_derivation(y);
      auto xy = lie_bracket(x, y);
      t.expect(commutator_apply(de_rham_derivation(s), lx, w).is_zero(), tag + " [d_dR, L_X]");
      t.expect(commutator_apply(contraction(x), contraction(y), w).is_zero(), tag + " [i_X, i_Y]");
      t.expect(commutator_apply(lx, contraction(y), w) == contract(xy, w), tag + " [L_X, i_Y]");
      t.expect(commutator_apply(lx, ly, w) == lie_derivative(xy, w), tag + " [L_X, L_Y]");
    });
  }
  return t.result(1, "derivation identities", std::to_string(triples) + " random (X, Y, element) triples");
}

inline CriterionResult criterion_euler_calculus(std::uint64_t seed) {
  selftest_detail::Tally t;
  Rng rng(seed + 1);
  int forms = 0;
  while (forms < 60) {
    auto s = random_table(rng);
    Element alpha = de_rham(random_homogeneous(s, rng));
    if (alpha.is_zero() || alpha.degree() + alpha.weight() == 0) continue;
    ++forms;
    const std::string tag = "form " + std::to_string(forms);
    const int mp = alpha.degree() + alpha.weight();
    t.guard(tag, [&] {
      t.expect(lie_derivative(euler_field(s), alpha) == Scalar(mp) * alpha, tag + " L_E alpha");
      t.expect(de_rham(exactness_witness(alpha)) == alpha, tag + " exactness witness");
    });
  }
  return t.result(2, "Euler calculus", std::to_string(forms) + " closed homogeneous forms");
}

/// One nonzero entry per row and column, each +-1 or +-2q on the z block.
inline bool darboux_block_pattern(const DarbouxPackage& p, const PairingMatrices& pm) {
  const auto& sig = p.roster.sig;
  for (const auto& [i, m] : pm.blocks) {
    const auto& rows = pm.rows.at(i);
    std::vector<int> per_col(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      int per_row = 0;
      for (std::size_t c = 0; c < m.cols(); ++c) {
        const Element& e = m.at(r, c);
        if (e.is_zero()) continue;
        ++per_row;
        ++per_col[c];
        bool unit = e == Element::constant(sig, Scalar(1)) || e == Element::constant(sig, Scalar(-1));
        bool zq = false;
        for (std::size_t j = 0; j < p.roster.zs.size(); ++j) {
          if (rows[r] == p.roster.zs[j]) {
            Element q2 = Scalar(2) * p.roster.q[j];
            zq = e == q2 || e == -q2;
          }
        }
        if (!unit && !zq) return false;
      }
      if (per_row != 1) return false;
    }
    for (int n : per_col) {
      if (n != 1) return false;
    }
  }
  return true;
}

inline CriterionResult criterion_darboux_generation(std::uint64_t seed) {
  selftest_detail::Tally t;
  Rng rng(seed + 2);
  auto specs = structured_specs(rng);
  std::set<Family> families;
  std::set<int> shifts;
  for (std::size_t n = 0; n < specs.size(); ++n) {
    const auto& spec = specs[n];
    const std::string tag = "spec " + std::to_string(n) + " (" + family_name(spec.family) + ")";
    t.guard(tag, [&] {
      DarbouxPackage p = generate(spec);
      families.insert(spec.family);
      shifts.insert(p.roster.k);
      const Element& w0 = p.omega.components[0];
      t.expect(p.algebra.d_squared_residues(), tag + " d^2 = 0");
      t.expect(check_closed(p.algebra, p.omega), tag + " closedness");
      t.expect(de_rham(p.pair.phi) == w0, tag + " d_dR phi = omega^0");
      Report pair;
      pair.expect_zero("d_dR Phi + d phi", de_rham(p.pair.Phi) + p.algebra.d(p.pair.phi));
      t.expect(pair, tag + " d_dR Phi + d phi = 0");
      t.expect(is_strictly_nondegenerate(p.algebra, p.roster.k, w0) &&
                   darboux_block_pattern(p, pairing_matrices(p.algebra, p.roster.k, w0)),
               tag + " strict nondegeneracy with unit / 2q blocks");
    });
  }
  std::string fams;
  for (Family f : families) fams += (fams.empty() ? "" : ",") + family_name(f);
  t.expect(shifts.size() == 6, "shifts -1..-6 all present");
  return t.result(3, "Darboux generation",
                  std::to_string(specs.size()) + " specs, families " + fams + ", " + std::to_string(shifts.size()) +
                      " shifts");
}

inline CriterionResult criterion_master_equation(std::uint64_t seed) {
  selftest_detail::Tally t;
  Rng rng(seed + 3);
  auto specs = structured_specs(rng);
  int perturbed = 0;
  for (std::size_t n = 0; n < specs.size(); ++n) {
    const auto& spec = specs[n];
    const std::string tag = "spec " + std::to_string(n);
    t.guard(tag, [&] {
      DarbouxPackage p = generate(spec);
      HamiltonianReport h = differential_is_hamiltonian(p.algebra, p.roster.k, p.omega.components[0], p.roster.H);
      t.expect(h.master, tag + " {H,H} = 0");
      t.expect(h.matches_d, tag + " X_H = d");
      t.expect(h.closed, tag + " d omega^0 = 0");
      // for k = -1 every H solves the master equation, so perturbing it proves nothing
      if (p.roster.k == -1) return;
      DarbouxSpec bad = perturb(spec, rng);
      Roster r = roster(bad);
      auto a = StandardFormCdga::unchecked(r.sig, darboux_differential(r));
      t.expect(!check_master(bad).ok() || !a.d_squared_residues().ok(), tag + " perturbation detected");
      ++perturbed;
    });
  }
  return t.result(4, "master equation vs square-zero",
                  std::to_string(specs.size()) + " Hamiltonian checks, " + std::to_string(perturbed) + " perturbations");
}

inline CriterionResult criterion_poisson(std::uint64_t seed) {
  selftest_detail::Tally t;
  Rng rng(seed + 4);
  int triples = 0;
  for (int k : {-1, -2}) {
    for (int v = 0; v < 3; ++v) {
      DarbouxSpec spec = random_spec(k, rng, v);
      const std::string tag = "k=" + std::to_string(k) + " model " + std::to_string(v);
      t.guard(tag, [&] {
        DarbouxPackage p = generate(spec);
        SymplecticSolver s(p.algebra, p.roster.k, p.omega.components[0]);
        std::vector<PoissonTriple> samples;
        const auto& sig = p.roster.sig;
        while (samples.size() < 6) {
          PoissonTriple tr{random_homogeneous(sig, rng, true), random_homogeneous(sig, rng, true),
                           random_homogeneous(sig, rng, true)};
          samples.push_back(std::move(tr));
        }
        triples += static_cast<int>(samples.size());
        t.expect(check_poisson_axioms(s, samples), tag + " axioms");
        for (GenIndex g = 0; g < sig->algebra_size(); ++g) {
          Element gen = Element::generator(sig, g);
          t.expect(s.bracket(p.roster.H, gen) == p.algebra.differential().value(g),
                   tag + " {H, " + sig->gen(g).name + "} = d " + sig->gen(g).name);
        }
      });
    }
  }
  return t.result(5, "Poisson axioms", std::to_string(triples) + " homogeneous triples over k=-1 and k=-2 models");
}

inline CriterionResult criterion_extraction(std::uint64_t seed) {
  selftest_detail::Tally t;
  Rng rng(seed + 5);
  auto specs = structured_specs(rng);
  int elements = 0;
  for (std::size_t n = 0; n < specs.size(); ++n) {
    const std::string tag = "spec " + std::to_string(n);
    t.guard(tag, [&] {
      DarbouxPackage p = generate(specs[n]);
      const Element& w0 = p.omega.components[0];
      HamiltonianPackage h = extract_hamiltonian(p.algebra, p.roster.k, w0, p.pair);
      t.expect(h.H == Scalar(p.roster.k) * p.pair.Phi && h.H == p.roster.H, tag + " H = k Phi");
      t.expect(contract(h.X, w0) == de_rham(h.H), tag + " iota_{X_H} omega^0 = d_dR H");
      for (int j = 0; j < 2; ++j) {
        Element w = random_element(p.roster.sig, rng, 3, 3);
        ++elements;
        t.expect(iota_q_identity_residue(p.algebra, w).is_zero(), tag + " iota_Q = -[iota_E, d]");
      }
    });
  }
  return t.result(6, "Hamiltonian extraction",
                  std::to_string(specs.size()) + " packages, " + std::to_string(elements) + " random DR elements");
}

inline CriterionResult criterion_worked_example() {
  selftest_detail::Tally t;
  t.guard("x^3", [&] {
    CriticalChart c{Field::Rational, {"x"}, {}, "x^3"};
    DarbouxPackage p = generate(derived_critical_locus(c));
    const auto& sig = p.roster.sig;
    Element x = Element::generator(sig, "x");
    auto ideal = p.algebra.h0_presentation();
    t.expect(ideal.size() == 1 && ideal[0] == Scalar(3) * x * x, "H0 ideal = (3x^2)");
    auto cot = cotangent_restriction(p.algebra);
    t.expect(cot.maps.size() == 1 && cot.maps[0].rows() == 1 && cot.maps[0].cols() == 1 &&
                 cot.maps[0].at(0, 0) == Scalar(6) * x,
             "cotangent matrix = (6x)");
    RationalPoint zero = parse_point(sig, "x=0");
    t.expect(is_minimal_at(p.algebra, zero), "minimal at x=0");
    auto h = hessian_complex_at(c, "x=0");
    t.expect(h.hessian == cot.maps[0].evaluate(zero.values) && h.source_rank == h.target_rank,
             "Hessian complex at 0 = cotangent matrix at 0");
  });
  t.guard("x^2", [&] {
    CriticalChart c{Field::Rational, {"x"}, {}, "x^2"};
    DarbouxPackage p = generate(derived_critical_locus(c));
    Report r = is_minimal_at(p.algebra, parse_point(p.roster.sig, "x=0"));
    t.expect(!r.ok() && r.residues.size() == 1 && r.residues[0].value == Element::constant(p.roster.sig, Scalar(2)),
             "H = x^2 is not minimal at x=0 (residue 2)");
  });
  return t.result(7, "k=-1 worked example", "H = x^3 and H = x^2 over Q[x]");
}

inline CriterionResult criterion_overlap() {
  selftest_detail::Tally t;
  std::string witnesses;
  for (const auto& [name, cert] : example_certificates()) {
    t.guard(name, [&] {
      ComparisonReport r = verify_comparison(cert);
      t.expect(r.checks, name + " certificate");
      t.expect(r.witness == r.difference, name + " witness expands to a*(H) - b*(H^)");
      witnesses += (witnesses.empty() ? "" : ", ") + name + ": " + to_string(r.witness);
    });
  }
  return t.result(8, "overlap certificates", "witnesses " + witnesses);
}

/// Criteria 1-8 in fixed order; 9 compares two complete runs.
inline std::vector<CriterionResult> run_criteria(std::uint64_t seed) {
  return {criterion_derivation_identities(seed), criterion_euler_calculus(seed), criterion_darboux_generation(seed),
          criterion_master_equation(seed),       criterion_poisson(seed),        criterion_extraction(seed),
          criterion_worked_example(),            criterion_overlap()};
}

inline std::string format_criteria(std::uint64_t seed, const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  os << "selftest seed " << seed << "\n";
  for (const auto& r : results) {
    os << "C" << r.id << " " << (r.pass ? "PASS" : "FAIL") << " " << r.title << "\n";
    for (const auto& d : r.details) os << "   " << d << "\n";
  }
  return os.str();
}

/// The full report: criteria 1-8, then criterion 9 from a second run.
inline std::string selftest_report(std::uint64_t seed, bool* all_pass = nullptr) {
  auto first = run_criteria(seed);
  std::string a = format_criteria(seed, first);
  std::string b = format_criteria(seed, run_criteria(seed));
  bool pass = a == b;
  for (const auto& r : first) pass = pass && r.pass;
  std::string out = a + "C9 " + (a == b ? "PASS" : "FAIL") + " determinism\n   two in-process runs " +
                    (a == b ? "identical" : "differ") + "\n" + (pass ? "ALL PASS\n" : "SOME FAILED\n");
  if (all_pass) *all_pass = pass;
  return out;
}

}  // namespace shiftsym
