#pragma once

// Sparse Laurent polynomials in x_1..x_n (n <= 8) with ParamRatio
// coefficients. Polynomial rings are the subset with nonnegative exponents.

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cms/coeffs.hpp"
#include "cms/sparse.hpp"

namespace cms {

inline constexpr int kMaxVars = 8;

// Exponent vector packed one biased byte per variable, variable 0 in the
// most significant byte.
class Mono {
 public:
  Mono() : key_(kZeroKey) {}
  static Mono var(int i, int e = 1);
  static Mono from_exps(const std::vector<int>& e);

  int exp(int i) const { return static_cast<int>((key_ >> shift(i)) & 0xffu) - 128; }
  Mono with_exp(int i, int e) const;
  Mono operator*(const Mono& o) const;
  Mono inverse() const;
  bool is_one() const { return key_ == kZeroKey; }
  int total_degree(int nvars) const;

  auto operator<=>(const Mono&) const = default;

 private:
  static constexpr std::uint64_t kZeroKey = 0x8080808080808080ull;
  static unsigned shift(int i) { return static_cast<unsigned>(8 * (kMaxVars - 1 - i)); }
  std::uint64_t key_;
};

struct GroupAction {
  enum class Kind {
    Swap,          // x_i <-> x_j
    SignedSwap,    // (x_i, x_j) -> (-x_j, -x_i)
    SignFlip,      // x_i -> -x_i
    Inversion,     // x_i -> 1/x_i
    InvertingSwap  // (x_i, x_j) -> (1/x_j, 1/x_i)
  };
  Kind kind;
  int i;
  int j = -1;
};

class MultiPoly {
 public:
  using Terms = TermVec<Mono, ParamRatio>;

  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}
  static MultiPoly var(int nvars, int i);
  static MultiPoly constant(int nvars, const ParamRatio& c);
  static MultiPoly monomial(int nvars, const Mono& m, const ParamRatio& c = ParamRatio(1));
  static MultiPoly from_terms(int nvars, Terms t);

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  ParamRatio constant_term() const;
  bool is_polynomial() const;  // no negative exponents
  int min_exp(int i) const;
  int max_exp(int i) const;

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly scaled(const ParamRatio& c) const;
  MultiPoly times_mono(const Mono& m, const ParamRatio& c = ParamRatio(1)) const;
  MultiPoly pow(int e) const;

  MultiPoly derivative(int i) const;  // d/dx_i
  MultiPoly euler(int i) const;       // x_i d/dx_i
  MultiPoly act(const GroupAction& g) const;

  // Exact division by (x_i - c * x_j^e) with c in {-1, 0, 1}, j != i; pass
  // j = -1 for a constant c. Throws InexactDivision on a remainder.
  MultiPoly divide_linear(int i, long c, int j = -1, int e = 0) const;
  // Same division; nullopt on a remainder.
  std::optional<MultiPoly> try_divide_linear(int i, long c, int j = -1, int e = 0) const;

  // Coefficientwise substitution and specialization of parameters.
  MultiPoly substitute(const std::map<Symbol, ParamRatio>& bindings) const;

  bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  // "(2)*x1^2*x2 + (k)*x3^-1"; "0" for zero.
  std::string to_string() const;

 private:
  int nvars_;
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

}  // namespace cms
