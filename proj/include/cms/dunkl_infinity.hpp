#pragma once

// Dunkl operators on Lambda-bar[x], the integrals E o D^r they generate on
// Lambda-bar, and the closed-form second-order operators at infinity.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cms/lambda_bar.hpp"

namespace cms {

class InfDunkl {
 public:
  InfDunkl(Family family, Params params);

  Family family() const { return family_; }
  const Params& params() const { return params_; }
  bool laurent() const { return family_is_laurent(family_); }

  LambdaXElem apply(const LambdaXElem& f) const;
  LambdaXElem apply(const LambdaXElem& f, int times) const;

  // Power of D behind the r-th integral: r for type A, 2r for B and BC.
  int power_for(int r) const { return is_type_b(family_) ? 2 * r : r; }

  // E o D^power_for(r) on f.
  LambdaElem integral(int r, const LambdaElem& f) const;

 private:
  Family family_;
  Params params_;
  ParamRatio k_, half_k_, two_k_, half_p_;
};

LambdaXElem apply_D(const InfDunkl& op, const LambdaXElem& f, int r);
LambdaElem integral_L(const InfDunkl& op, int r, const LambdaElem& f);

// Values of one integral on the monomials of a basis, with p_0 factored out
// (D fixes p_0, so the integrals are linear over C[p_0]). Filled in parallel;
// further monomials are computed on demand.
class IntegralTable {
 public:
  IntegralTable(const InfDunkl& op, int r) : op_(op), r_(r) {}
  void precompute(const std::vector<PMonomial>& basis, bool parallel = true);
  LambdaElem apply(const LambdaElem& f);
  const LambdaElem& on_monomial(const PMonomial& m);  // m free of p_0

 private:
  const InfDunkl& op_;
  int r_;
  std::map<PMonomial, LambdaElem> cache_;
};

// Sum of c * P * D[a1]...D[ar] with D[a] = a d/dp_a, normal ordered.
struct DiffKey {
  PMonomial coeff;   // the p-monomial P
  PMonomial derivs;  // multiset of derivative indices, as exponents
  bool operator<(const DiffKey& o) const {
    if (!(derivs == o.derivs)) return derivs < o.derivs;
    return coeff < o.coeff;
  }
  bool operator==(const DiffKey& o) const = default;
};

class LambdaDiffOp {
 public:
  using Terms = TermVec<DiffKey, ParamRatio>;

  LambdaDiffOp() = default;
  static LambdaDiffOp from_terms(Terms t);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int order() const;

  LambdaElem apply(const LambdaElem& f) const;
  // Keeps the terms whose derivative multiset has weighted degree <= deg.
  LambdaDiffOp truncated(int deg) const;

  LambdaDiffOp operator-(const LambdaDiffOp& o) const;
  bool operator==(const LambdaDiffOp& o) const = default;

  // "(-2*k)*p0^2*D[2] + ..." in canonical term order.
  std::string to_string() const;

 private:
  Terms terms_;
};

enum class ClosedFormVariant {
  // Coefficients obtained by expanding E o D^2; agrees with the integral.
  Expanded,
  // The commonly quoted coefficients of the B and BC operators at infinity
  // (second-order term 8 resp. 4, h = -k p_0 - p/2 - q). Identical to
  // Expanded for type A.
  Transcribed,
};

// Closed-form second integral, with the infinite sums generated up to the
// p-index window (the largest index the argument involves).
LambdaDiffOp closed_form_L2(Family family, const Params& params, int window,
                            ClosedFormVariant variant = ClosedFormVariant::Expanded);

// Closed form applied to f with the window taken from f.
LambdaElem apply_closed_form(Family family, const Params& params, const LambdaElem& f,
                             ClosedFormVariant variant = ClosedFormVariant::Expanded);

// Recovers the differential operator that acts as E o D^power_for(r) on all
// p_0-free monomials of degree <= deg.
LambdaDiffOp reconstruct_diff_op(const InfDunkl& op, int r, int deg);

// Basis monomials (see monomial_basis) paired with [L^(r), L^(s)] applied
// to them.
std::vector<std::pair<PMonomial, LambdaElem>> commutator_on_basis(const InfDunkl& op, int r, int s, int deg,
                                                                   int pwindow, bool parallel = true);

// ad(f)^n (L) applied to g, where L = E o D^power_for(r) and
// ad(f)(L)(g) = L(f g) - f L(g).
LambdaElem ad_power_residual(const InfDunkl& op, int r, const LambdaElem& f, int n, const LambdaElem& g);

}  // namespace cms
