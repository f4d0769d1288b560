#pragma once

// The algebra of power sums with p_0 adjoined, its polynomial and Laurent
// extensions in one extra variable x, and the family-specific building blocks
// of the Dunkl operators at infinity: the derivation, the difference part,
// the reflection and the projection back to power sums.

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "cms/coeffs.hpp"
#include "cms/sparse.hpp"

namespace cms {

// p-indices run over 0..kPSlots-1.
inline constexpr int kPSlots = 32;

// Monomial prod_i p_i^{e_i}. Ordered by weighted degree sum(i*e_i), then
// lexicographically on the exponent table.
class PMonomial {
 public:
  PMonomial() = default;
  static PMonomial p(int index, unsigned mult = 1);

  unsigned exp(int index) const { return e_[static_cast<std::size_t>(index)]; }
  int degree() const { return deg_; }
  int max_index() const;  // -1 for the empty monomial
  bool is_one() const { return max_index() < 0; }

  PMonomial operator*(const PMonomial& o) const;
  // Requires exp(index) > 0.
  PMonomial without_one(int index) const;
  bool divides(const PMonomial& o) const;
  PMonomial quotient_of(const PMonomial& o) const;  // o / *this

  bool operator<(const PMonomial& o) const {
    if (deg_ != o.deg_) return deg_ < o.deg_;
    return e_ < o.e_;
  }
  bool operator==(const PMonomial& o) const { return deg_ == o.deg_ && e_ == o.e_; }

  // "p0^2*p3", or "1".
  std::string to_string() const;

 private:
  std::array<std::uint8_t, kPSlots> e_{};
  int deg_ = 0;
};

// Element of Lambda-bar: sparse sum of p-monomials.
class LambdaElem {
 public:
  using Terms = TermVec<PMonomial, ParamRatio>;

  LambdaElem() = default;
  static LambdaElem constant(const ParamRatio& c);
  static LambdaElem p(int index, unsigned mult = 1);
  static LambdaElem monomial(const PMonomial& m, const ParamRatio& c = ParamRatio(1));
  static LambdaElem from_terms(Terms t);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // max weighted degree, -1 for zero

  LambdaElem operator-() const;
  LambdaElem operator+(const LambdaElem& o) const;
  LambdaElem operator-(const LambdaElem& o) const;
  LambdaElem operator*(const LambdaElem& o) const;
  LambdaElem scaled(const ParamRatio& c) const;
  bool operator==(const LambdaElem& o) const = default;

  std::string to_string() const;

 private:
  Terms terms_;
};

struct XPKey {
  int xexp = 0;
  PMonomial mono;
  bool operator<(const XPKey& o) const {
    if (xexp != o.xexp) return xexp < o.xexp;
    return mono < o.mono;
  }
  bool operator==(const XPKey& o) const = default;
};

// Element of Lambda-bar[x] (laurent = false) or Lambda-bar[x, 1/x].
class LambdaXElem {
 public:
  using Terms = TermVec<XPKey, ParamRatio>;

  explicit LambdaXElem(bool laurent = false) : laurent_(laurent) {}
  static LambdaXElem x_power(int a, bool laurent = false);
  static LambdaXElem p(int index, bool laurent = false);
  static LambdaXElem term(int xexp, const PMonomial& m, const ParamRatio& c, bool laurent = false);
  static LambdaXElem from_lambda(const LambdaElem& f, bool laurent = false);
  // Canonicalizes; throws std::invalid_argument on a negative power when !laurent.
  static LambdaXElem from_terms(Terms t, bool laurent);

  bool laurent() const { return laurent_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // True when no term carries a nonzero power of x.
  bool is_x_free() const;
  LambdaElem as_lambda() const;  // requires is_x_free()

  LambdaXElem operator-() const;
  LambdaXElem operator+(const LambdaXElem& o) const;
  LambdaXElem operator-(const LambdaXElem& o) const;
  LambdaXElem operator*(const LambdaXElem& o) const;  // same laurent flag required
  LambdaXElem scaled(const ParamRatio& c) const;
  LambdaXElem shifted(int xshift) const;  // multiply by x^xshift
  bool operator==(const LambdaXElem& o) const { return laurent_ == o.laurent_ && terms_ == o.terms_; }

  // Terms "coeff*x^a*p0^e0*p3^e3" joined by " + ".
  std::string to_string() const;

 private:
  bool laurent_;
  Terms terms_;
};

// Coefficient text used inside element serializations: "(num)" when the
// denominator is 1, otherwise the full num/den form.
std::string coeff_text(const ParamRatio& c);

bool family_is_laurent(Family f);

// Derivation of Lambda-bar[x] fixed by its values on x and the p_l.
LambdaXElem partial(const LambdaXElem& f, Family family);
// Lambda-bar-linear difference operator, defined by its rule on x powers.
LambdaXElem delta(const LambdaXElem& f, Family family);
// tau (RatB) or t (TrigBC); throws UnsupportedFamily for type A.
LambdaXElem reflect(const LambdaXElem& f, Family family);
// Lambda-bar-linear projection to Lambda-bar.
LambdaElem project_E(const LambdaXElem& f, Family family);

// Multiplies by a Laurent polynomial in x with constant coefficients given
// as (exponent, coefficient) pairs.
LambdaXElem mul_x_poly(const LambdaXElem& f, const std::vector<std::pair<int, long>>& poly);
// Exact division by a monic polynomial in x (exponents 0..deg, nonzero
// constant term); throws InexactDivision on a nonzero remainder.
LambdaXElem div_x_poly(const LambdaXElem& f, const std::vector<std::pair<int, long>>& poly);

// All p-monomials prod p_i^{e_i} with 1 <= i <= pwindow and weighted degree
// in [0, deg], each also multiplied by p_0^j for j = 0..p0_max.
std::vector<PMonomial> monomial_basis(int deg, int pwindow, int p0_max = 0);

inline std::ostream& operator<<(std::ostream& os, const LambdaElem& f) { return os << f.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const LambdaXElem& f) { return os << f.to_string(); }

}  // namespace cms
