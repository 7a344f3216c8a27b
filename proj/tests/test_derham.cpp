#include <gtest/gtest.h>

#include "shiftsym/derham.hpp"
#include "shiftsym/random.hpp"

using namespace shiftsym;

namespace {

SignaturePtr xy_table() { return Signature::create(Field::Rational, {{"x", 0}, {"y", -1}}); }

Element P(const SignaturePtr& s, const std::string& t) { return parse_element(s, t); }

Derivation partial_x(const SignaturePtr& s) { return partial_derivation(s, s->index("x")); }
Derivation partial_y(const SignaturePtr& s) { return partial_derivation(s, s->index("y")); }

}  // namespace

TEST(DeRham, Generators) {
  auto s = xy_table();
  EXPECT_EQ(de_rham(P(s, "x^3")), P(s, "3*x^2*dx"));
  EXPECT_TRUE(de_rham(P(s, "dx")).is_zero());
  EXPECT_EQ(de_rham(P(s, "y*dx")), P(s, "dy*dx"));
  EXPECT_EQ(to_string(de_rham(P(s, "x^3"))), "3*x^2*dx");
}

TEST(DeRham, SquaresToZero) {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    auto s = random_table(rng);
    Element e = random_element(s, rng, 4, 4);
    EXPECT_TRUE(de_rham(de_rham(e)).is_zero()) << to_string(e);
  }
}

TEST(Contract, TwoForm) {
  auto s = xy_table();
  Element w = P(s, "dy*dx");
  EXPECT_EQ(contract(partial_x(s), w), P(s, "dy"));
  EXPECT_EQ(contract(partial_y(s), w), P(s, "dx"));
  EXPECT_TRUE(contract(partial_x(s), P(s, "x^2*y")).is_zero());
}

TEST(Contract, RejectsOneFormValues) {
  auto s = xy_table();
  Derivation bad(s, -1, 1);
  bad.set("x", P(s, "dx"));
  EXPECT_THROW(contraction(bad), PreconditionError);
}

TEST(LieDerivative, EulerOnFunctionsAndForms) {
  auto s = Signature::create(Field::Rational, {{"x", 0}, {"y", -1}, {"u", -2}});
  Derivation e = euler_field(s);
  Element f = P(s, "x^2*y*u");
  EXPECT_EQ(lie_derivative(e, f), Scalar(-3) * f);
  EXPECT_EQ(lie_derivative(e, de_rham(f)), Scalar(-3) * de_rham(f));
  Element a = P(s, "u*dy*dx");
  EXPECT_EQ(lie_derivative(e, a), Scalar(a.degree() + a.weight()) * a);
}

TEST(LieDerivative, DegreeShifts) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    auto s = random_table(rng);
    int dx = static_cast<int>(rng() % 3) - 2;
    Derivation x = random_vector_field(s, rng, dx);
    Element w = random_homogeneous(s, rng);
    Element c = contract(x, w);
    Element l = lie_derivative(x, w);
    if (!c.is_zero()) {
      EXPECT_TRUE(c.has_bidegree(w.degree() + dx + 1, w.weight() - 1));
    }
    if (!l.is_zero()) {
      EXPECT_TRUE(l.has_bidegree(w.degree() + dx, w.weight()));
    }
  }
}

TEST(DerivationIdentities, RandomTriples) {
  Rng rng(99);
  int tested = 0;
  while (tested < 60) {
    auto s = random_table(rng);
    Derivation x = random_vector_field(s, rng, static_cast<int>(rng() % 4) - 2);
    Derivation y = random_vector_field(s, rng, static_cast<int>(rng() % 4) - 2);
    Element w = random_element(s, rng, 3, 3);
    if (x.is_zero() || y.is_zero() || w.is_zero()) continue;
    ++tested;
    Derivation lx = lie_derivative_derivation(x);
    Derivation xy = lie_bracket(x, y);
    EXPECT_TRUE(commutator_apply(de_rham_derivation(s), lx, w).is_zero());
    EXPECT_TRUE(commutator_apply(contraction(x), contraction(y), w).is_zero());
    EXPECT_EQ(commutator_apply(lx, contraction(y), w), contract(xy, w));
    EXPECT_EQ(commutator_apply(lx, lie_derivative_derivation(y), w), lie_derivative(xy, w));
  }
}

TEST(Exactness, WitnessOnTwoForm) {
  auto s = xy_table();
  Element a = P(s, "dy*dx");
  Element b = exactness_witness(a);
  EXPECT_EQ(de_rham(b), a);
}

TEST(Exactness, RecoversPreimageUpToClosedTerm) {
  auto s = xy_table();
  Element pre = P(s, "y*dx");
  Element b = exactness_witness(de_rham(pre));
  EXPECT_TRUE(de_rham(b - pre).is_zero());
}

TEST(Exactness, ObstructedOnBaseForms) {
  auto s = Signature::create(Field::Rational, {{"x", 0}, {"w", 0}});
  EXPECT_THROW(exactness_witness(P(s, "dx*dw")), CheckFailure);
  EXPECT_THROW(exactness_witness(P(s, "dx")), CheckFailure);
}

TEST(Exactness, RequiresClosedForm) {
  auto s = xy_table();
  EXPECT_THROW(exactness_witness(P(s, "x*dy")), PreconditionError);
}

TEST(AlgebraMap, ExtendsToOneForms) {
  auto src = xy_table();
  auto tgt = Signature::create(Field::Rational, {{"t", 0}, {"e", -1}});
  AlgebraMap m(src, tgt);
  m.set("x", P(tgt, "t^2"));
  m.set("y", P(tgt, "t*e"));
  EXPECT_EQ(m.apply(P(src, "x*y")), P(tgt, "t^3*e"));
  EXPECT_EQ(m.apply(P(src, "dx")), P(tgt, "2*t*dt"));
  EXPECT_EQ(m.apply(de_rham(P(src, "x*y"))), de_rham(m.apply(P(src, "x*y"))));
  EXPECT_THROW(m.set("y", P(tgt, "t")), ShapeError);
}
