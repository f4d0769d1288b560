#pragma once

// Exact coefficient arithmetic: arbitrary-precision rationals (GMP) and the
// field of rational functions in the deformation parameters k, p, q, r, s.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace cms {

using BigInt = mpz_class;
using BigRat = mpq_class;

enum class Symbol : std::uint8_t { k = 0, p = 1, q = 2, r = 3, s = 4 };
inline constexpr int kNumSymbols = 5;

const char* symbol_name(Symbol s);
std::optional<Symbol> symbol_from_name(const std::string& name);

// Exponent vector over (k, p, q, r, s), packed so that integer comparison of
// the key is graded lexicographic order with k < p < q < r < s.
class ParamExp {
 public:
  ParamExp() = default;
  static ParamExp of(Symbol s, unsigned e = 1);

  unsigned exp(Symbol s) const {
    return static_cast<unsigned>((key_ >> (8 * static_cast<unsigned>(s))) & 0xffu);
  }
  unsigned degree() const { return static_cast<unsigned>(key_ >> 40); }
  bool is_one() const { return key_ == 0; }
  std::uint64_t key() const { return key_; }

  ParamExp operator*(const ParamExp& o) const;
  // Exponent-wise minimum (gcd of two monomials).
  ParamExp min(const ParamExp& o) const;
  bool divides(const ParamExp& o) const;
  // Requires divides(o).
  ParamExp quotient_of(const ParamExp& o) const;

  auto operator<=>(const ParamExp&) const = default;

 private:
  static ParamExp from_exps(const std::array<unsigned, kNumSymbols>& e);
  std::uint64_t key_ = 0;
};

// Sparse polynomial in the parameter symbols with rational coefficients.
// Terms are sorted ascending, so the leading term (graded lex) is the last.
class ParamPoly {
 public:
  using Term = std::pair<ParamExp, BigRat>;

  ParamPoly() = default;
  ParamPoly(long c);  // NOLINT(google-explicit-constructor)
  explicit ParamPoly(const BigRat& c);
  static ParamPoly symbol(Symbol s);
  static ParamPoly monomial(const ParamExp& e, const BigRat& c);
  static ParamPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1; }
  bool is_monomial() const { return terms_.size() == 1; }
  BigRat constant_value() const;  // requires is_constant()
  const Term& leading() const { return terms_.back(); }
  unsigned degree_in(Symbol s) const;
  bool involves(Symbol s) const { return degree_in(s) > 0; }

  ParamPoly operator-() const;
  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  ParamPoly operator+(const ParamPoly& o) const;
  ParamPoly operator-(const ParamPoly& o) const;
  ParamPoly operator*(const ParamPoly& o) const;
  ParamPoly scaled(const BigRat& c) const;
  ParamPoly times_monomial(const ParamExp& e, const BigRat& c) const;

  // Exact division; nullopt when o does not divide *this.
  std::optional<ParamPoly> divide_exact(const ParamPoly& o) const;
  // Makes leading coefficient 1 (zero stays zero).
  ParamPoly monic() const;

  BigRat eval(const std::map<Symbol, BigRat>& point) const;

  bool operator==(const ParamPoly& o) const = default;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

// gcd over Q[k,p,q,r,s], normalized monic (gcd(0,0) = 0).
ParamPoly gcd(const ParamPoly& a, const ParamPoly& b);

// Exact rational function in the parameters. Canonical form: num and den
// coprime, den monic in graded lex order (so its leading coefficient is
// positive), zero is 0/1. Structural equality is mathematical equality.
class ParamRatio {
 public:
  ParamRatio() : den_(1) {}
  ParamRatio(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit ParamRatio(const BigRat& c) : num_(c), den_(1) {}
  explicit ParamRatio(ParamPoly num) : num_(std::move(num)), den_(1) {}
  ParamRatio(ParamPoly num, ParamPoly den);  // throws DivisionByZero
  static ParamRatio symbol(Symbol s) { return ParamRatio(ParamPoly::symbol(s)); }
  static ParamRatio fraction(long n, long d) { return ParamRatio(BigRat(n, d)); }

  const ParamPoly& num() const { return num_; }
  const ParamPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  BigRat constant_value() const { return num_.constant_value(); }  // requires is_constant()

  ParamRatio operator-() const;
  ParamRatio& operator+=(const ParamRatio& o);
  ParamRatio& operator-=(const ParamRatio& o);
  ParamRatio& operator*=(const ParamRatio& o);
  ParamRatio& operator/=(const ParamRatio& o);
  friend ParamRatio operator+(ParamRatio a, const ParamRatio& b) { return a += b; }
  friend ParamRatio operator-(ParamRatio a, const ParamRatio& b) { return a -= b; }
  friend ParamRatio operator*(ParamRatio a, const ParamRatio& b) { return a *= b; }
  friend ParamRatio operator/(ParamRatio a, const ParamRatio& b) { return a /= b; }
  ParamRatio inverse() const;
  ParamRatio pow(int e) const;

  bool operator==(const ParamRatio& o) const = default;

  // `num/den` with integer coefficients, e.g. (2*k^2+2*k)/1.
  std::string to_string() const;

 private:
  void normalize();
  ParamPoly num_;
  ParamPoly den_;
};

enum class ArithOp { add, sub, mul, div };
ParamRatio arith(const ParamRatio& a, const ParamRatio& b, ArithOp op);

// Throws DenominatorVanishes when the substituted denominator is zero.
ParamRatio substitute(const ParamRatio& a, const std::map<Symbol, ParamRatio>& bindings);

// Throws PoleAtPoint when the denominator vanishes at the point.
BigRat eval_at(const ParamRatio& a, const std::map<Symbol, BigRat>& point);

std::string to_string(const BigRat& r);

// Parameter values a family works with. In symbolic mode these are the
// symbols themselves with constrained ones eliminated; in sampled mode they
// are random rationals satisfying the same constraints.
struct Params {
  ParamRatio k, p, q, r, s;
};

enum class Family { RatA, TrigA, RatB, TrigBC };

const char* family_name(Family f);  // rat-a, trig-a, rat-b, trig-bc
std::optional<Family> family_from_name(const std::string& name);
inline bool is_type_b(Family f) { return f == Family::RatB || f == Family::TrigBC; }
inline bool is_trig(Family f) { return f == Family::TrigA || f == Family::TrigBC; }

// k symbolic; RatB: q symbolic, s = (2q+1-k)/(2k); TrigBC: p, q symbolic,
// r = p/k, s = (2q+1-k)/(2k).
Params symbolic_params(Family f);
// k, p, q as given (each may be a symbol or a value), r and s from the constraints.
Params constrained_params(Family f, const ParamRatio& k, const ParamRatio& p, const ParamRatio& q);
// Same constraints with k, p, q drawn from a seeded generator.
Params sampled_params(Family f, std::uint64_t seed);
// Random rational with numerator and denominator in [1, bound], random sign.
BigRat random_rational(std::mt19937_64& rng, long bound, bool allow_negative = true);

}  // namespace cms
