#include <gtest/gtest.h>

#include <random>

#include "cms/dunkl_infinity.hpp"
#include "cms/error.hpp"
#include "cms/finite_cms.hpp"

using namespace cms;

namespace {

constexpr Family kFamilies[] = {Family::RatA, Family::TrigA, Family::RatB, Family::TrigBC};

ParamRatio K() { return ParamRatio::symbol(Symbol::k); }
MultiPoly x(int N, int i, int e = 1) { return MultiPoly::monomial(N, Mono::var(i, e)); }
MultiPoly c(int N, const ParamRatio& v) { return MultiPoly::constant(N, v); }

LambdaXElem X(Family f, int a) { return LambdaXElem::x_power(a, family_is_laurent(f)); }
LambdaXElem P(Family f, int i) { return LambdaXElem::p(i, family_is_laurent(f)); }

// x, x^2, p_1, p_2, p_3, x p_1, x^2 p_2
std::vector<LambdaXElem> generators(Family f) {
  return {X(f, 1), X(f, 2), P(f, 1), P(f, 2), P(f, 3), X(f, 1) * P(f, 1), X(f, 2) * P(f, 2)};
}

// Exponents 0..maxdeg in every variable.
bool trig_pair_commutes_on_monomials(int N, int maxdeg) {
  Params pt = symbolic_params(Family::TrigA);
  std::vector<int> e(N, 0);
  for (int code = 0;; ++code) {
    int rest = code;
    for (int v = 0; v < N; ++v) {
      e[v] = rest % (maxdeg + 1);
      rest /= maxdeg + 1;
    }
    if (rest != 0) return true;
    MultiPoly f = MultiPoly::monomial(N, Mono::from_exps(e));
    if (!(finite_dunkl(Family::TrigA, pt, 0, finite_dunkl(Family::TrigA, pt, 1, f)) ==
          finite_dunkl(Family::TrigA, pt, 1, finite_dunkl(Family::TrigA, pt, 0, f))))
      return false;
  }
}

}  // namespace

TEST(FiniteDunkl, Examples) {
  Params pa = symbolic_params(Family::RatA);
  EXPECT_EQ(finite_dunkl(Family::RatA, pa, 0, x(2, 0)), c(2, ParamRatio(1) - K()));
  // Symmetric input: the difference part vanishes and only the Euler part remains.
  EXPECT_EQ(finite_dunkl(Family::TrigA, symbolic_params(Family::TrigA), 0, x(2, 0) + x(2, 1)), x(2, 0));
  // x_1^2 with N = 3: 2x_1 - k((x_1 + x_2) + (x_1 + x_3)).
  EXPECT_EQ(finite_dunkl(Family::RatA, pa, 0, x(3, 0, 2)),
            x(3, 0).scaled(ParamRatio(2)) - (x(3, 0).scaled(ParamRatio(2)) + x(3, 1) + x(3, 2)).scaled(K()));
}

TEST(FiniteDunkl, RatBReflectionTerm) {
  Params pb = symbolic_params(Family::RatB);
  // N = 1: D(x) = 1 - q (x - (-x))/x = 1 - 2q.
  EXPECT_EQ(finite_dunkl(Family::RatB, pb, 0, x(1, 0)), c(1, ParamRatio(1) - pb.q * 2));
}

TEST(FiniteDunkl, TrigBCIsExactOnLaurentMonomials) {
  Params pbc = symbolic_params(Family::TrigBC);
  for (int a = -3; a <= 3; ++a)
    for (int b = -2; b <= 2; ++b) {
      MultiPoly f = MultiPoly::monomial(2, Mono::from_exps({a, b}));
      EXPECT_NO_THROW(finite_dunkl(Family::TrigBC, pbc, 0, f));
    }
}

TEST(FiniteDunkl, RationalOperatorsCommute) {
  for (Family fam : {Family::RatA, Family::RatB}) {
    Params pr = symbolic_params(fam);
    for (int N = 2; N <= 3; ++N)
      for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b) {
          MultiPoly f = MultiPoly::monomial(N, Mono::from_exps({a, b}));
          for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
              MultiPoly lhs = finite_dunkl(fam, pr, i, finite_dunkl(fam, pr, j, f));
              MultiPoly rhs = finite_dunkl(fam, pr, j, finite_dunkl(fam, pr, i, f));
              EXPECT_EQ(lhs, rhs) << family_name(fam) << " N=" << N;
            }
        }
  }
}

TEST(FiniteDunkl, TrigOperatorsDoNotCommute) {
  EXPECT_FALSE(trig_pair_commutes_on_monomials(3, 2));
  // With two variables the three-index obstruction is absent.
  EXPECT_TRUE(trig_pair_commutes_on_monomials(2, 4));
}

TEST(Heckman, Examples) {
  Params pa = symbolic_params(Family::RatA);
  EXPECT_EQ(heckman_integral(Family::RatA, pa, 2, x(2, 0, 2) + x(2, 1, 2)), c(2, ParamRatio(4) - K() * 4));
  EXPECT_TRUE(heckman_integral(Family::RatA, pa, 2, c(2, 1)).is_zero());
  MultiPoly p1 = x(3, 0) + x(3, 1) + x(3, 2);
  EXPECT_EQ(heckman_integral(Family::TrigA, symbolic_params(Family::TrigA), 2, p1),
            p1.scaled(ParamRatio(1) - K() * 2));
  EXPECT_THROW(heckman_integral(Family::RatA, pa, 2, x(2, 0)), NotInvariant);
  EXPECT_THROW(heckman_integral(Family::RatB, symbolic_params(Family::RatB), 1, x(2, 0) + x(2, 1)), NotInvariant);
}

TEST(Heckman, IntegralsCommuteOnInvariants) {
  Params pt = symbolic_params(Family::TrigA);
  Hom h = phi(Family::TrigA, pt, 3);
  for (const auto& g : {LambdaElem::p(2), LambdaElem::p(1, 2), LambdaElem::p(1) * LambdaElem::p(2)}) {
    MultiPoly f = h.apply(g);
    EXPECT_EQ(heckman_integral(Family::TrigA, pt, 2, heckman_integral(Family::TrigA, pt, 3, f)),
              heckman_integral(Family::TrigA, pt, 3, heckman_integral(Family::TrigA, pt, 2, f)));
  }
}

TEST(Hom, Examples) {
  Params pa = symbolic_params(Family::RatA);
  EXPECT_EQ(phi(Family::RatA, pa, 3).apply(LambdaElem::p(2)), x(3, 0, 2) + x(3, 1, 2) + x(3, 2, 2));
  LambdaXElem xp1 = LambdaXElem::x_power(1) * LambdaXElem::p(1);
  EXPECT_EQ(phi_deformed(Family::RatA, pa, {1, 1}, 0).apply(xp1), x(2, 0) * (x(2, 0) + x(2, 1).scaled(K().inverse())));
  EXPECT_EQ(phi(Family::TrigBC, symbolic_params(Family::TrigBC), 2).apply(LambdaElem::p(0)), c(2, 4));
  EXPECT_EQ(phi(Family::RatB, symbolic_params(Family::RatB), 2).apply(LambdaElem::p(0)), c(2, 2));
  EXPECT_EQ(phi_deformed(Family::RatA, pa, {1, 1}).apply(LambdaElem::p(0)), c(2, ParamRatio(1) + K().inverse()));
}

// Both sides of the square Lambda-bar[x] -> Lambda_N[x_i] computed independently.
TEST(Diagram, DunklReductionAllFamilies) {
  for (Family fam : kFamilies) {
    InfDunkl op(fam, symbolic_params(fam));
    for (int N = 2; N <= 3; ++N)
      for (const auto& g : generators(fam))
        for (int i = 0; i < N; ++i) {
          Hom h = phi_at(fam, op.params(), N, i);
          EXPECT_EQ(h.apply(op.apply(g)), finite_dunkl(fam, op.params(), i, h.apply(g)))
              << family_name(fam) << " N=" << N << " i=" << i << " f=" << g.to_string();
        }
  }
}

TEST(Diagram, HeckmanReductionAllFamilies) {
  for (Family fam : kFamilies) {
    InfDunkl op(fam, symbolic_params(fam));
    for (const auto& g : {LambdaElem::p(1), LambdaElem::p(2), LambdaElem::p(1, 2)}) {
      Hom h = phi(fam, op.params(), 2);
      // E(x^j) = p_|j| sees both x_i^j and x_i^-j, hence the factor 2 for BC.
      ParamRatio scale(fam == Family::TrigBC ? 2 : 1);
      EXPECT_EQ(h.apply(op.integral(1, g)), heckman_integral(fam, op.params(), 1, h.apply(g)).scaled(scale))
          << family_name(fam);
      if (!is_type_b(fam))
        EXPECT_EQ(h.apply(op.integral(2, g)), heckman_integral(fam, op.params(), 2, h.apply(g))) << family_name(fam);
    }
  }
}

TEST(Deformed, RecursionExamples) {
  Params pa = symbolic_params(Family::RatA);
  Parity par{1, 1};
  MultiPoly f = x(2, 0) + x(2, 1).scaled(K().inverse());
  EXPECT_EQ(deformed_partial_r(pa, par, 0, 1, f), c(2, 1));
  EXPECT_EQ(deformed_partial_r(pa, par, 1, 1, f), c(2, 1));
  EXPECT_TRUE(deformed_partial_r(pa, par, 0, 2, f).is_zero());
  EXPECT_TRUE(deformed_integral(pa, par, 1, c(2, 7)).is_zero());
}

TEST(Deformed, SecondIntegralOnDeformedP2) {
  Params pa = symbolic_params(Family::RatA);
  Parity par{1, 1};
  MultiPoly f = x(2, 0, 2) + x(2, 1, 2).scaled(K().inverse());
  ParamRatio p0 = ParamRatio(1) + K().inverse();
  ParamRatio expect = (ParamRatio(1) + K()) * p0 * 2 - K() * p0 * p0 * 2;
  EXPECT_EQ(deformed_integral(pa, par, 2, f), c(2, expect));
}

TEST(Deformed, RecursionMatchesInfinity) {
  Params pa = symbolic_params(Family::RatA);
  InfDunkl op(Family::RatA, pa);
  for (Parity par : {Parity{2, 1}, Parity{1, 2}}) {
    for (int l = 1; l <= 3; ++l) {
      LambdaXElem g = LambdaXElem::p(l);
      MultiPoly f = phi_deformed(Family::RatA, pa, par).apply(LambdaElem::p(l));
      for (int r = 1; r <= 3; ++r) {
        auto parts = deformed_partials(pa, par, r, f);
        for (int i = 0; i < par.size(); ++i)
          EXPECT_EQ(parts[i], phi_deformed(Family::RatA, pa, par, i).apply(op.apply(g, r))) << "l=" << l << " r=" << r;
      }
    }
  }
}

TEST(Deformed, IntegralMatchesInfinity) {
  Params pa = symbolic_params(Family::RatA);
  InfDunkl op(Family::RatA, pa);
  Parity par{2, 1};
  Hom h = phi_deformed(Family::RatA, pa, par);
  for (const auto& g : {LambdaElem::p(2), LambdaElem::p(3), LambdaElem::p(1) * LambdaElem::p(2)})
    for (int r = 1; r <= 3; ++r) EXPECT_EQ(h.apply(op.integral(r, g)), deformed_integral(pa, par, r, h.apply(g)));
}

TEST(Deformed, OutsideSubalgebraIsRejected) {
  Params pa = symbolic_params(Family::RatA);
  // x_1^2 is not a polynomial in the deformed power sums.
  EXPECT_THROW(deformed_integral(pa, {1, 1}, 2, x(2, 0, 2)), InexactDivision);
}

TEST(Deformed, IntegralsCommute) {
  Params pa = symbolic_params(Family::RatA);
  for (Parity par : {Parity{2, 1}, Parity{1, 2}}) {
    Hom h = phi_deformed(Family::RatA, pa, par);
    for (const auto& m : monomial_basis(4, 4)) {
      MultiPoly f = h.apply(LambdaElem::monomial(m));
      EXPECT_EQ(deformed_integral(pa, par, 2, deformed_integral(pa, par, 3, f)),
                deformed_integral(pa, par, 3, deformed_integral(pa, par, 2, f)))
          << m.to_string();
    }
  }
}

TEST(Deformed, DegeneratesAtUnitCoupling) {
  Params one = symbolic_params(Family::RatA);
  one.k = ParamRatio(1);
  MultiPoly f = x(2, 0, 2) * x(2, 1) + x(2, 1, 2) * x(2, 0);
  for (int r = 1; r <= 3; ++r)
    EXPECT_EQ(deformed_integral(one, {1, 1}, r, f), heckman_integral(Family::RatA, one, r, f));
  Params pa = symbolic_params(Family::RatA);
  MultiPoly g = x(3, 0, 3) + x(3, 1, 3) + x(3, 2, 3);
  EXPECT_EQ(deformed_integral(pa, Parity::undeformed(3), 2, g), heckman_integral(Family::RatA, pa, 2, g));
}

TEST(Deformed, DunklRelations) {
  for (Family fam : {Family::RatA, Family::TrigA, Family::RatB}) {
    InfDunkl op(fam, symbolic_params(fam));
    for (Parity par : {Parity{1, 1}, Parity{2, 1}, Parity{1, 2}})
      for (const auto& g : generators(fam))
        for (int i = 0; i < par.size(); ++i)
          EXPECT_EQ(phi_deformed(fam, op.params(), par, i).apply(op.apply(g)),
                    deformed_dunkl_relation(fam, op.params(), par, i, g))
              << family_name(fam) << " (" << par.n << "," << par.m << ") i=" << i << " f=" << g.to_string();
  }
  EXPECT_THROW(deformed_dunkl_relation(Family::TrigBC, symbolic_params(Family::TrigBC), {1, 1}, 0, X(Family::TrigBC, 1)),
               UnsupportedFamily);
}

// A nonzero element of Lambda-bar involving p_1..p_M survives some phi_N with
// N <= M + 1.
TEST(ZeroSeparation, RandomElements) {
  std::mt19937_64 rng(17);
  Params pa = symbolic_params(Family::RatA);
  for (int trial = 0; trial < 20; ++trial) {
    auto basis = monomial_basis(4, 3, 1);
    LambdaElem f;
    for (const auto& m : basis)
      if (rng() % 3 == 0) f = f + LambdaElem::monomial(m, ParamRatio(random_rational(rng, 5)));
    if (f.is_zero()) continue;
    bool survives = false;
    for (int N = 1; N <= 4 && !survives; ++N) survives = !phi(Family::RatA, pa, N).apply(f).is_zero();
    EXPECT_TRUE(survives) << f.to_string();
  }
}

TEST(Invariance, Generators) {
  MultiPoly f = x(2, 0, 2) + x(2, 1, 2);
  EXPECT_TRUE(is_invariant(Family::RatB, f));
  EXPECT_FALSE(is_invariant(Family::RatB, x(2, 0) + x(2, 1)));
  EXPECT_TRUE(is_invariant(Family::RatA, x(2, 0) + x(2, 1)));
  EXPECT_FALSE(is_invariant(Family::TrigBC, x(2, 0) + x(2, 1)));
  EXPECT_TRUE(is_invariant(Family::TrigBC, x(2, 0) + x(2, 1) + x(2, 0, -1) + x(2, 1, -1)));
}
