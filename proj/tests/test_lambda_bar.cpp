#include <gtest/gtest.h>

#include <random>

#include "cms/error.hpp"
#include "cms/lambda_bar.hpp"

using namespace cms;

namespace {

constexpr Family kFamilies[] = {Family::RatA, Family::TrigA, Family::RatB, Family::TrigBC};

LambdaXElem X(int a, bool laurent = false) { return LambdaXElem::x_power(a, laurent); }
LambdaXElem Pl(int i, bool laurent = false) { return LambdaXElem::p(i, laurent); }
LambdaXElem C(long c, bool laurent = false) {
  return LambdaXElem::term(0, PMonomial{}, ParamRatio(c), laurent);
}

LambdaXElem random_elem(std::mt19937_64& rng, bool laurent, int max_x = 3, int max_p = 4) {
  std::uniform_int_distribution<int> xe(laurent ? -max_x : 0, max_x);
  std::uniform_int_distribution<int> pi(0, max_p);
  std::uniform_int_distribution<int> c(-4, 4);
  LambdaXElem::Terms t;
  int n = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    PMonomial m;
    int np = static_cast<int>(rng() % 3);
    for (int j = 0; j < np; ++j) m = m * PMonomial::p(pi(rng));
    ParamRatio coeff = ParamRatio(c(rng));
    if (rng() % 2) coeff = coeff * ParamRatio::symbol(Symbol::k);
    t.emplace_back(XPKey{xe(rng), m}, coeff);
  }
  return LambdaXElem::from_terms(std::move(t), laurent);
}

LambdaXElem random_lambda(std::mt19937_64& rng, bool laurent) {
  LambdaXElem f = random_elem(rng, laurent, 0);
  return f;
}

}  // namespace

TEST(PMonomial, OrderAndText) {
  PMonomial a = PMonomial::p(0, 2) * PMonomial::p(3);
  EXPECT_EQ(a.to_string(), "p0^2*p3");
  EXPECT_EQ(a.degree(), 3);
  EXPECT_EQ(PMonomial{}.to_string(), "1");
  EXPECT_LT(PMonomial::p(2), PMonomial::p(3));
  EXPECT_LT(PMonomial::p(1, 2), PMonomial::p(3));
  EXPECT_TRUE(PMonomial::p(1).divides(a * PMonomial::p(1)));
  EXPECT_THROW(PMonomial::p(kPSlots), std::out_of_range);
}

TEST(Mul, Examples) {
  EXPECT_EQ(X(1) * X(1), X(2));
  EXPECT_EQ(Pl(1) * Pl(1), LambdaXElem::term(0, PMonomial::p(1, 2), ParamRatio(1)));
  LambdaXElem f = X(1) * Pl(0) + Pl(1) - X(1).scaled(ParamRatio(2));
  LambdaXElem expect = X(1) * Pl(0) * Pl(3) + Pl(1) * Pl(3) - (X(1) * Pl(3)).scaled(ParamRatio(2));
  EXPECT_EQ(f * Pl(3), expect);
}

TEST(Mul, LaurentFlagMismatchThrows) {
  EXPECT_THROW(X(1, true) * X(1, false), std::invalid_argument);
  EXPECT_THROW(X(-1, false), std::invalid_argument);
}

TEST(Text, Format) {
  LambdaXElem f = X(-2, true) * Pl(0, true) * Pl(0, true) * Pl(3, true) + C(3, true);
  EXPECT_EQ(f.to_string(), "(1)*x^-2*p0^2*p3 + (3)");
  EXPECT_EQ(LambdaXElem().to_string(), "0");
}

TEST(Partial, Examples) {
  EXPECT_EQ(partial(Pl(2), Family::RatA), X(1).scaled(ParamRatio(2)));
  EXPECT_EQ(partial(X(1) * Pl(1), Family::TrigA), X(1) * Pl(1) + X(2));
  EXPECT_EQ(partial(Pl(1, true), Family::TrigBC), X(1, true) - X(-1, true));
  EXPECT_EQ(partial(Pl(3), Family::RatB), X(5).scaled(ParamRatio(6)));
  EXPECT_TRUE(partial(Pl(0), Family::RatA).is_zero());
}

TEST(Delta, Examples) {
  EXPECT_EQ(delta(X(1), Family::RatA), Pl(0) - C(1));
  EXPECT_EQ(delta(X(2) * Pl(3), Family::RatA), (X(1) * Pl(0) + Pl(1) - X(1).scaled(ParamRatio(2))) * Pl(3));
  EXPECT_EQ(delta(X(2), Family::RatB), X(1) * Pl(0) - X(1));
  EXPECT_TRUE(delta(C(1, true), Family::TrigBC).is_zero());
  // x^3: p_2 + 2x p_1 + x^3 p_0 ... with the trig A coefficient pattern.
  EXPECT_EQ(delta(X(3), Family::TrigA), X(3) * Pl(0) + (X(2) * Pl(1)).scaled(ParamRatio(2)) +
                                            (X(1) * Pl(2)).scaled(ParamRatio(2)) + Pl(3) -
                                            X(3).scaled(ParamRatio(6)));
}

TEST(Delta, RatBOddPowers) {
  // x: p_0 - 1; x^3: x^2 p_0 + p_1 - 2x^2.
  EXPECT_EQ(delta(X(1), Family::RatB), Pl(0) - C(1));
  EXPECT_EQ(delta(X(3), Family::RatB), X(2) * Pl(0) + Pl(1) - X(2).scaled(ParamRatio(2)));
}

TEST(Delta, TrigBCSmallPowers) {
  bool L = true;
  // x: (p_0 - 3)x - x^-1 + p_1
  EXPECT_EQ(delta(X(1, L), Family::TrigBC), X(1, L) * Pl(0, L) - X(1, L).scaled(ParamRatio(3)) - X(-1, L) + Pl(1, L));
  // x^-1 is the image of x under t up to sign.
  EXPECT_EQ(delta(X(-1, L), Family::TrigBC),
            -(X(-1, L) * Pl(0, L)) + X(-1, L).scaled(ParamRatio(3)) + X(1, L) - Pl(1, L));
}

TEST(Reflect, Examples) {
  EXPECT_EQ(reflect(X(3) * Pl(2), Family::RatB), -(X(3) * Pl(2)));
  EXPECT_EQ(reflect(Pl(5), Family::RatB), Pl(5));
  EXPECT_EQ(reflect(X(2, true) * Pl(1, true), Family::TrigBC), X(-2, true) * Pl(1, true));
  EXPECT_THROW(reflect(X(1), Family::RatA), UnsupportedFamily);
  EXPECT_THROW(reflect(X(1), Family::TrigA), UnsupportedFamily);
}

TEST(ProjectE, Examples) {
  EXPECT_EQ(project_E(X(3) * Pl(1), Family::RatA), LambdaElem::p(3) * LambdaElem::p(1));
  EXPECT_TRUE(project_E(X(5) * Pl(2), Family::RatB).is_zero());
  EXPECT_EQ(project_E(X(4) * Pl(2), Family::RatB), LambdaElem::p(2, 2));
  EXPECT_EQ(project_E(X(-3, true), Family::TrigBC), LambdaElem::p(3));
  EXPECT_EQ(project_E(Pl(2), Family::RatA), LambdaElem::p(0) * LambdaElem::p(2));
}

TEST(DivXPoly, ExactAndInexact) {
  bool L = true;
  LambdaXElem f = (X(2, L) - C(1, L)) * Pl(1, L) + (X(-1, L) - X(1, L)).scaled(ParamRatio::symbol(Symbol::k));
  // f = (x - 1)((x + 1) p_1 - k (x + 1)/x)
  LambdaXElem q = div_x_poly(f, {{1, 1}, {0, -1}});
  EXPECT_EQ(mul_x_poly(q, {{1, 1}, {0, -1}}), f);
  EXPECT_THROW(div_x_poly(X(2, L) + C(1, L), {{1, 1}, {0, -1}}), InexactDivision);
  EXPECT_THROW(div_x_poly(X(2, L), {{1, 2}, {0, -1}}), std::invalid_argument);
}

TEST(MonomialBasis, Counts) {
  // Partitions of 0..4 with parts <= 4: 1+1+2+3+5.
  EXPECT_EQ(monomial_basis(4, 4).size(), 12u);
  EXPECT_EQ(monomial_basis(4, 2).size(), 9u);
  EXPECT_EQ(monomial_basis(3, 3, 1).size(), 14u);
  auto b = monomial_basis(6, 6);
  EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
}

// Properties.

TEST(Properties, PartialIsADerivation) {
  std::mt19937_64 rng(11);
  for (Family fam : kFamilies) {
    bool L = family_is_laurent(fam);
    for (int i = 0; i < 40; ++i) {
      LambdaXElem f = random_elem(rng, L), g = random_elem(rng, L);
      EXPECT_EQ(partial(f * g, fam), partial(f, fam) * g + f * partial(g, fam)) << family_name(fam);
    }
  }
}

TEST(Properties, DeltaAndReflectAreLambdaLinear) {
  std::mt19937_64 rng(12);
  for (Family fam : kFamilies) {
    bool L = family_is_laurent(fam);
    for (int i = 0; i < 30; ++i) {
      LambdaXElem f = random_elem(rng, L);
      LambdaXElem g = random_lambda(rng, L);
      EXPECT_EQ(delta(f * g, fam), delta(f, fam) * g);
      if (is_type_b(fam)) EXPECT_EQ(reflect(f * g, fam), reflect(f, fam) * g);
    }
  }
}

TEST(Properties, ReflectIsAnInvolution) {
  std::mt19937_64 rng(13);
  for (Family fam : {Family::RatB, Family::TrigBC}) {
    for (int i = 0; i < 30; ++i) {
      LambdaXElem f = random_elem(rng, family_is_laurent(fam));
      EXPECT_EQ(reflect(reflect(f, fam), fam), f);
    }
  }
}

TEST(Properties, ProjectionCommutesWithLambdaMultiplication) {
  std::mt19937_64 rng(14);
  for (Family fam : kFamilies) {
    bool L = family_is_laurent(fam);
    for (int i = 0; i < 30; ++i) {
      LambdaXElem f = random_elem(rng, L);
      LambdaXElem g = random_lambda(rng, L);
      EXPECT_EQ(project_E(f * g, fam), project_E(f, fam) * g.as_lambda());
    }
  }
}

TEST(Properties, TrigBCDeltaAnticommutesWithInversion) {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 30; ++i) {
    LambdaXElem f = random_elem(rng, true);
    EXPECT_EQ(delta(reflect(f, Family::TrigBC), Family::TrigBC), -reflect(delta(f, Family::TrigBC), Family::TrigBC));
  }
}
