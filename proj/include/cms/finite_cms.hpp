#pragma once

// Finite Dunkl operators for the four families, Heckman integrals on
// invariants, the deformed rational recursion and the substitution
// homomorphisms from Lambda-bar[x] into polynomials in x_1..x_N.
//
// Variables are 0-indexed in the API (x_1 is index 0).

#include <vector>

#include "cms/lambda_bar.hpp"
#include "cms/multipoly.hpp"

namespace cms {

// Two species: indices 0..n-1 have parity 0, n..n+m-1 parity 1.
struct Parity {
  int n = 0;
  int m = 0;
  int size() const { return n + m; }
  int of(int i) const { return i < n ? 0 : 1; }
  static Parity undeformed(int N) { return {N, 0}; }
};

// k^e for e in {-1, 0, 1, 2}.
ParamRatio k_power(const Params& params, int e);
// k^{-p(i)}, the weight of variable i in deformed power sums.
ParamRatio deformed_weight(const Params& params, const Parity& parity, int i);

// D_{i,N} applied to f, N = f.nvars(). TrigA and TrigBC use the Euler
// derivative x_i d/dx_i; TrigBC works with Laurent polynomials.
MultiPoly finite_dunkl(Family family, const Params& params, int i, const MultiPoly& f);

// Invariance under the family's Weyl group (checked on generators).
bool is_invariant(Family family, const MultiPoly& f);

// sum_i D_{i,N}^power f with power r (A) or 2r (B, BC). Throws NotInvariant
// if f or the result fails the invariance check.
MultiPoly heckman_integral(Family family, const Params& params, int r, const MultiPoly& f);

// Deformed rational A recursion: element i of the result is d_i^(r) f.
// f must lie in the algebra of deformed power sums; otherwise one of the
// divided differences fails with InexactDivision.
std::vector<MultiPoly> deformed_partials(const Params& params, const Parity& parity, int r, const MultiPoly& f);
MultiPoly deformed_partial_r(const Params& params, const Parity& parity, int i, int r, const MultiPoly& f);
// sum_i k^{-p(i)} d_i^(r) f.
MultiPoly deformed_integral(const Params& params, const Parity& parity, int r, const MultiPoly& f);

// Substitution homomorphism. With m = 0 it is phi_N (N = n), otherwise the
// deformed phi_{n,m}. With point >= 0, x maps to x_point.
struct Hom {
  Family family;
  Parity parity;
  int point = -1;
  Params params;

  // p_l -> sum_j k^{-p(j)} g_l(x_j) with g_l(x) = x^l, x^{2l} (RatB) or
  // x^l + x^{-l} (TrigBC).
  MultiPoly image_of_p(int l) const;
  MultiPoly apply(const LambdaElem& f) const;
  MultiPoly apply(const LambdaXElem& f) const;  // requires point >= 0 if f involves x
};

Hom phi(Family family, const Params& params, int N);
Hom phi_at(Family family, const Params& params, int N, int i);
Hom phi_deformed(Family family, const Params& params, const Parity& parity, int i = -1);

// Right-hand side of the relation expressing phi^(i)_{n,m}(D f) through
// derivatives and divided differences of the phi^(j)_{n,m}(f). Defined for
// RatA, TrigA and RatB; throws UnsupportedFamily for TrigBC.
MultiPoly deformed_dunkl_relation(Family family, const Params& params, const Parity& parity, int i,
                                  const LambdaXElem& f);

}  // namespace cms
