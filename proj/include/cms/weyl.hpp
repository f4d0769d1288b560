#pragma once

// Differential operators in x_1..x_n with rational coefficients, matrices of
// them, and the quantum Moser matrices, Hamiltonians and integrals of the
// deformed systems.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cms/finite_cms.hpp"
#include "cms/multipoly.hpp"

namespace cms {

// Irreducible denominators that occur in the four families.
struct Factor {
  enum class Kind : std::uint8_t {
    Diff,          // x_i - x_j, i < j
    Sum,           // x_i + x_j, i < j
    ProdMinusOne,  // x_i x_j - 1, i < j
    MinusOne,      // x_i - 1
    PlusOne,       // x_i + 1
  };
  Kind kind;
  std::int8_t i;
  std::int8_t j = -1;

  MultiPoly poly(int nvars) const;
  // Exact quotient f / poly, or nullopt.
  std::optional<MultiPoly> divide(const MultiPoly& f) const;
  std::string to_string() const;

  auto operator<=>(const Factor&) const = default;
};

// Laurent polynomial over a product of Factors. Canonical: no factor of the
// denominator divides the numerator, zero has an empty denominator. The
// representation is unique, so == is equality of functions.
class RatFun {
 public:
  using Den = std::vector<std::pair<Factor, int>>;

  explicit RatFun(int nvars = 0) : num_(nvars) {}
  explicit RatFun(MultiPoly num) : num_(std::move(num)) {}
  static RatFun constant(int nvars, const ParamRatio& c);
  static RatFun var(int nvars, int i, int e = 1);
  static RatFun make(MultiPoly num, Den den);

  // c / (x_i - x_j)^e for any i != j (sign fixed up for i > j).
  static RatFun inv_diff(int nvars, int i, int j, int e = 1, const ParamRatio& c = ParamRatio(1));
  static RatFun inv_sum(int nvars, int i, int j, int e = 1, const ParamRatio& c = ParamRatio(1));
  static RatFun inv_prod_minus_one(int nvars, int i, int j, int e = 1, const ParamRatio& c = ParamRatio(1));
  static RatFun inv_minus_one(int nvars, int i, int e = 1, const ParamRatio& c = ParamRatio(1));
  static RatFun inv_plus_one(int nvars, int i, int e = 1, const ParamRatio& c = ParamRatio(1));

  int nvars() const { return num_.nvars(); }
  const MultiPoly& num() const { return num_; }
  const Den& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  std::optional<ParamRatio> as_constant() const;

  RatFun operator-() const;
  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun scaled(const ParamRatio& c) const;

  RatFun derivative(int i) const;
  RatFun substitute(const std::map<Symbol, ParamRatio>& bindings) const;

  bool operator==(const RatFun& o) const = default;

  // "num" or "(num)/((x1-x2)^2*(x1+1))"; single-term numerators are not wrapped.
  std::string to_string() const;

 private:
  void reduce();
  MultiPoly num_;
  Den den_;
};

// Sum of a_alpha(x) d^alpha, coefficients on the left. The key is the
// multi-index alpha stored as a Mono with nonnegative exponents.
class WeylOp {
 public:
  using Terms = TermVec<Mono, RatFun>;

  explicit WeylOp(int nvars = 0) : nvars_(nvars) {}
  static WeylOp mult(const RatFun& a);
  static WeylOp constant(int nvars, const ParamRatio& c);
  static WeylOp d(int nvars, int i);      // d/dx_i
  static WeylOp euler(int nvars, int i);  // x_i d/dx_i
  static WeylOp from_terms(int nvars, Terms t);

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int order() const;  // -1 for zero
  // The scalar c when the operator is multiplication by a constant.
  std::optional<ParamRatio> as_constant() const;
  // Drops the multiplication-by-constant part.
  WeylOp without_constant() const;

  WeylOp operator-() const;
  WeylOp operator+(const WeylOp& o) const;
  WeylOp operator-(const WeylOp& o) const;
  WeylOp operator*(const WeylOp& o) const;  // composition, normal ordered
  WeylOp& operator+=(const WeylOp& o) { return *this = *this + o; }
  WeylOp& operator-=(const WeylOp& o) { return *this = *this - o; }
  WeylOp scaled(const ParamRatio& c) const;
  WeylOp left_mult(const RatFun& a) const;

  RatFun apply(const RatFun& f) const;
  RatFun apply(const MultiPoly& f) const { return apply(RatFun(f)); }
  WeylOp substitute(const std::map<Symbol, ParamRatio>& bindings) const;

  bool operator==(const WeylOp& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  // "coeff * d1^2 * d3" terms joined by " + "; "0" for zero.
  std::string to_string() const;

 private:
  int nvars_;
  Terms terms_;
};

WeylOp compose(const WeylOp& a, const WeylOp& b);
WeylOp commutator(const WeylOp& a, const WeylOp& b);

class OpMatrix {
 public:
  OpMatrix(int rows, int cols, int nvars);
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nvars() const { return nvars_; }
  WeylOp& at(int i, int j) { return e_[static_cast<std::size_t>(i * cols_ + j)]; }
  const WeylOp& at(int i, int j) const { return e_[static_cast<std::size_t>(i * cols_ + j)]; }

  OpMatrix operator+(const OpMatrix& o) const;
  OpMatrix operator-(const OpMatrix& o) const;
  // Entries computed independently; parallel = true distributes them.
  OpMatrix multiply(const OpMatrix& o, bool parallel = true) const;
  OpMatrix pow(int r, bool parallel = true) const;
  bool operator==(const OpMatrix& o) const;

  std::vector<std::string> entry_strings() const;  // row-major

 private:
  int rows_, cols_, nvars_;
  std::vector<WeylOp> e_;
};

// A families: (n+m) x (n+m). B and BC: 2(n+m) x 2(n+m) block [[A, B], [-B, -A]].
OpMatrix moser_L(Family family, const Params& params, const Parity& parity);
// A families only; UnsupportedFamily otherwise.
OpMatrix moser_M(Family family, const Params& params, const Parity& parity);
// Gauged Moser matrix of the A families (diagonal shifted by the
// log-derivative of the ground state); UnsupportedFamily otherwise.
OpMatrix gauged_moser_L(Family family, const Params& params, const Parity& parity);

// e* = (k^{-p(i)}), repeated twice for the block families.
std::vector<ParamRatio> e_star(Family family, const Params& params, const Parity& parity);
// e* X e.
WeylOp total_trace(const OpMatrix& x, const std::vector<ParamRatio>& estar);

// e* L^power e with power r (A) or 2r (B, BC).
WeylOp moser_integral(Family family, const Params& params, const Parity& parity, int r, bool parallel = true);
// e* Lg^r e with the gauged matrix (A families).
WeylOp gauged_moser_integral(Family family, const Params& params, const Parity& parity, int r, bool parallel = true);

// Deformed Hamiltonians, transcribed from their displays with their signs.
// Ungauged: RatA (kinetic + pair potentials), TrigA (exponential
// coordinates), RatB (leading minus sign), TrigBC (8k(k+1) normalization).
// Gauged: RatA and TrigA for any (n, m); RatB and TrigBC only for m = 0.
WeylOp hamiltonian(Family family, const Params& params, const Parity& parity, bool gauged);
// Trig BC operator with kinetic part 4 sum k^{p(i)} (x_i d_i)^2 and the mixed
// -8(k+1) x_i y_j / (x_i y_j - 1)^2 term added to the displayed potential.
// This is the normalization with e* L^2 e = H/2 + const.
WeylOp trig_bc_consistent_hamiltonian(const Params& params, const Parity& parity);

// d_i log Psi_0 for the A-family ground states, one entry per variable.
std::vector<RatFun> ground_state_logderivs(Family family, const Params& params, const Parity& parity);
// Substitutes d_i -> d_i + w_i, i.e. Psi^{-1} o op o Psi when w = d log Psi.
WeylOp gauge_conjugate(const WeylOp& op, const std::vector<RatFun>& logderivs);

struct LaxEntry {
  int i, j;
  WeylOp residual;  // [L_ij, H] - [L, M]_ij
};
// Entries of [L, H] - [L, M] (H scalar, from the ungauged Hamiltonian);
// nonzero residuals only. UnsupportedFamily for B and BC.
std::vector<LaxEntry> lax_check(Family family, const Params& params, const Parity& parity, bool parallel = true);
// Number of entries the check inspects.
inline int lax_entry_count(const Parity& parity) { return parity.size() * parity.size(); }

// Monomials x^a, a_i >= 0, total degree <= deg; Laurent exponents with
// sum |a_i| <= deg when laurent.
std::vector<Mono> monomials_up_to(int nvars, int deg, bool laurent);

struct BasisResidual {
  Mono input;
  RatFun value;
};
// [a, b] applied to the monomials; nonzero results only.
std::vector<BasisResidual> commute_on_basis(const WeylOp& a, const WeylOp& b, int deg, bool laurent,
                                            bool parallel = true);

// a = scale * b + constant, when such scale and constant exist.
struct AffineMatch {
  ParamRatio scale;
  ParamRatio constant;
};
std::optional<AffineMatch> affine_match(const WeylOp& a, const WeylOp& b);

inline std::ostream& operator<<(std::ostream& os, const RatFun& f) { return os << f.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const WeylOp& f) { return os << f.to_string(); }

}  // namespace cms
