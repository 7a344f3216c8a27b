#include <gtest/gtest.h>

#include "shiftsym/hamilton.hpp"
#include "shiftsym/darboux.hpp"
#include "shiftsym/random.hpp"

using namespace shiftsym;

namespace {

Element P(const SignaturePtr& s, const std::string& t) { return parse_element(s, t); }

DarbouxPackage cubic() { return generate({Family::Odd, 0, Field::Rational, {"x"}, {}, {1}, {}, "x^3"}); }

SymplecticSolver solver(const DarbouxPackage& p) { return {p.algebra, p.roster.k, p.omega.components[0]}; }

}  // namespace

TEST(VectorField, Cubic) {
  auto p = cubic();
  const auto& s = p.roster.sig;
  auto sol = solver(p);
  Derivation xy = sol.hamiltonian_vector_field(P(s, "y1_1"));
  EXPECT_TRUE(xy.value(s->index("y1_1")).is_zero());
  Element vx = xy.value(s->index("x"));
  EXPECT_TRUE(vx == P(s, "1") || vx == P(s, "-1"));
  Derivation xh = sol.hamiltonian_vector_field(p.roster.H);
  EXPECT_TRUE(xh.value(s->index("x")).is_zero());
  EXPECT_EQ(xh.value(s->index("y1_1")), P(s, "3*x^2"));
}

TEST(VectorField, RejectsDegenerateForm) {
  auto p = cubic();
  EXPECT_THROW(SymplecticSolver(p.algebra, -1, P(p.roster.sig, "x*dx*dy1_1")), PreconditionError);
}

TEST(Bracket, CubicValues) {
  auto p = cubic();
  const auto& s = p.roster.sig;
  auto sol = solver(p);
  Element x = P(s, "x"), y = P(s, "y1_1");
  EXPECT_TRUE(sol.bracket(x, x).is_zero());
  EXPECT_EQ(sol.bracket(p.roster.H, y), P(s, "3*x^2"));
  EXPECT_TRUE(sol.bracket(p.roster.H, x).is_zero());
  Element yx = sol.bracket(y, x);
  EXPECT_TRUE(yx == P(s, "1") || yx == P(s, "-1"));
  EXPECT_EQ(sol.bracket(x, y), -yx);
}

TEST(Bracket, LeibnizOnGenerators) {
  auto p = cubic();
  const auto& s = p.roster.sig;
  auto sol = solver(p);
  std::vector<PoissonTriple> t{{P(s, "y1_1"), P(s, "x"), P(s, "x")}, {P(s, "x^2"), P(s, "y1_1"), P(s, "x*y1_1")}};
  EXPECT_TRUE(check_poisson_axioms(sol, t).ok());
  EXPECT_EQ(sol.bracket(P(s, "y1_1"), P(s, "x^2")), Scalar(2) * P(s, "x") * sol.bracket(P(s, "y1_1"), P(s, "x")));
}

TEST(Bracket, AxiomsAndDegreesOnRandomModels) {
  Rng rng(17);
  for (int k : {-1, -2, -3, -4}) {
    auto p = generate(random_spec(k, rng));
    const auto& s = p.roster.sig;
    auto sol = solver(p);
    std::vector<PoissonTriple> t;
    for (int n = 0; n < 4; ++n) {
      t.push_back({random_homogeneous(s, rng, true), random_homogeneous(s, rng, true),
                   random_homogeneous(s, rng, true)});
    }
    EXPECT_TRUE(check_poisson_axioms(sol, t).ok()) << "k=" << k << "\n" << check_poisson_axioms(sol, t).str();
    for (const auto& tr : t) {
      Element b = sol.bracket(tr.f, tr.g);
      if (!b.is_zero()) {
        EXPECT_TRUE(b.has_bidegree(tr.f.degree() + tr.g.degree() - k, 0));
      }
    }
  }
}

TEST(Bracket, HamiltonianOfBracketIsCommutator) {
  // with {f,g} = (-1)^{|f|-k-1} X_f(g) this comes out as X_{f,g} = -[X_f, X_g]
  Rng rng(23);
  for (int k : {-1, -2, -3}) {
    auto p = generate(random_spec(k, rng));
    const auto& s = p.roster.sig;
    auto sol = solver(p);
    for (int n = 0; n < 6; ++n) {
      Element f = random_homogeneous(s, rng, true);
      Element g = random_homogeneous(s, rng, true);
      Derivation lhs = sol.hamiltonian_vector_field(sol.bracket(f, g));
      Derivation c = lie_bracket(sol.hamiltonian_vector_field(f), sol.hamiltonian_vector_field(g));
      for (GenIndex h = 0; h < s->algebra_size(); ++h) {
        EXPECT_EQ(lhs.value(h), -c.value(h)) << "k=" << k << " f=" << to_string(f) << " g=" << to_string(g);
      }
    }
  }
}

TEST(Hamiltonian, GeneratedDifferentialIsHamiltonian) {
  Rng rng(3);
  for (int k : {-1, -2, -3, -4, -5, -6}) {
    auto p = generate(random_spec(k, rng));
    auto h = differential_is_hamiltonian(p.algebra, p.roster.k, p.omega.components[0], p.roster.H);
    EXPECT_TRUE(h.ok()) << "k=" << k << "\n" << h.master.str() << h.matches_d.str() << h.closed.str();
  }
}

TEST(Hamiltonian, PerturbedDifferentialFails) {
  auto p = cubic();
  const auto& s = p.roster.sig;
  auto bad = StandardFormCdga::unchecked(s, {{s->index("y1_1"), P(s, "3*x^2 + x")}});
  auto h = differential_is_hamiltonian(bad, -1, p.omega.components[0], p.roster.H);
  EXPECT_TRUE(h.master.ok());
  ASSERT_EQ(h.matches_d.residues.size(), 1U);
  EXPECT_EQ(h.matches_d.residues[0].value, P(s, "-x"));
}

TEST(Hamiltonian, ConstantBracketNoteAtMinusTwo) {
  DarbouxSpec spec{Family::WeakTwo, 0, Field::Rational, {"a"}, {}, {1, 1}, {"1"}, "z1_1"};
  Roster r = roster(spec);
  auto a = StandardFormCdga::unchecked(r.sig, darboux_differential(r));
  auto h = differential_is_hamiltonian(a, -2, darboux_omega0(r), r.H);
  EXPECT_FALSE(h.master.ok());
  ASSERT_EQ(h.master.notes.size(), 1U);
  EXPECT_TRUE(h.master.residues[0].value.constant_value().has_value());
}

TEST(Hamiltonian, WrongDegree) {
  auto p = cubic();
  EXPECT_THROW(differential_is_hamiltonian(p.algebra, -1, p.omega.components[0], P(p.roster.sig, "y1_1")),
               ShapeError);
}

TEST(Extract, CubicRecoversH) {
  auto p = cubic();
  const auto& s = p.roster.sig;
  HamiltonianPackage h = extract_hamiltonian(p.algebra, -1, p.omega.components[0], p.pair);
  EXPECT_EQ(h.H, P(s, "x^3"));
  EXPECT_EQ(h.X.value(s->index("y1_1")), P(s, "3*x^2"));
  EXPECT_TRUE(h.X.value(s->index("x")).is_zero());
}

TEST(Extract, AfterGaugeChange) {
  auto p = cubic();
  const auto& s = p.roster.sig;
  Element psi = P(s, "x*y1_1");
  PhiPhiPair moved{p.pair.Phi + p.algebra.d(psi), p.pair.phi + de_rham(psi)};
  HamiltonianPackage h = extract_hamiltonian(p.algebra, -1, p.omega.components[0], moved);
  EXPECT_EQ(h.H, P(s, "x^3"));
}

TEST(Extract, IotaQIdentity) {
  Rng rng(41);
  for (int k : {-1, -2, -3}) {
    auto p = generate(random_spec(k, rng));
    for (int n = 0; n < 5; ++n) {
      EXPECT_TRUE(iota_q_identity_residue(p.algebra, random_element(p.roster.sig, rng, 3, 3)).is_zero());
    }
  }
}

TEST(Trivial, ConstantAndZero) {
  auto p = cubic();
  const auto& s = p.roster.sig;
  EXPECT_TRUE(solver(p).hamiltonian_vector_field(P(s, "7")).is_zero());
  auto flat = StandardFormCdga::unchecked(s, {});
  HamiltonianPackage h = extract_hamiltonian(flat, -1, p.omega.components[0], PhiPhiPair{Element(s), Element(s)});
  EXPECT_TRUE(h.H.is_zero());
  EXPECT_TRUE(h.X.is_zero());
}
