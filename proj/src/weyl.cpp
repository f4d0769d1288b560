#include "cms/weyl.hpp"

#include <algorithm>
#include <map>

#include "cms/error.hpp"
#include "cms/lambda_bar.hpp"
#include "cms/parallel.hpp"

namespace cms {

// ---------------------------------------------------------------- Factor

MultiPoly Factor::poly(int nvars) const {
  const MultiPoly xi = MultiPoly::var(nvars, i);
  const MultiPoly one = MultiPoly::constant(nvars, ParamRatio(1));
  switch (kind) {
    case Kind::Diff: return xi - MultiPoly::var(nvars, j);
    case Kind::Sum: return xi + MultiPoly::var(nvars, j);
    case Kind::ProdMinusOne: return xi * MultiPoly::var(nvars, j) - one;
    case Kind::MinusOne: return xi - one;
    case Kind::PlusOne: return xi + one;
  }
  return one;
}

std::optional<MultiPoly> Factor::divide(const MultiPoly& f) const {
  switch (kind) {
    case Kind::Diff: return f.try_divide_linear(i, 1, j, 1);
    case Kind::Sum: return f.try_divide_linear(i, -1, j, 1);
    case Kind::ProdMinusOne: {
      // x_i x_j - 1 = x_j (x_i - x_j^{-1})
      auto q = f.try_divide_linear(i, 1, j, -1);
      if (!q) return std::nullopt;
      return q->times_mono(Mono::var(j, -1));
    }
    case Kind::MinusOne: return f.try_divide_linear(i, 1);
    case Kind::PlusOne: return f.try_divide_linear(i, -1);
  }
  return std::nullopt;
}

std::string Factor::to_string() const {
  const std::string a = "x" + std::to_string(i + 1);
  const std::string b = "x" + std::to_string(j + 1);
  switch (kind) {
    case Kind::Diff: return "(" + a + "-" + b + ")";
    case Kind::Sum: return "(" + a + "+" + b + ")";
    case Kind::ProdMinusOne: return "(" + a + "*" + b + "-1)";
    case Kind::MinusOne: return "(" + a + "-1)";
    case Kind::PlusOne: return "(" + a + "+1)";
  }
  return "";
}

// ---------------------------------------------------------------- RatFun

namespace {

using Den = RatFun::Den;

Den merge_den(const Den& a, const Den& b, bool add) {
  std::map<Factor, int> m;
  for (const auto& [f, e] : a) m[f] = e;
  for (const auto& [f, e] : b) m[f] = add ? m[f] + e : std::max(m[f], e);
  Den out;
  for (const auto& [f, e] : m)
    if (e > 0) out.emplace_back(f, e);
  return out;
}

int mult_of(const Den& d, const Factor& f) {
  for (const auto& [g, e] : d)
    if (g == f) return e;
  return 0;
}

// num * prod over lcm of the factors missing from d.
MultiPoly lift(const MultiPoly& num, const Den& d, const Den& lcm) {
  MultiPoly out = num;
  for (const auto& [f, e] : lcm) {
    int missing = e - mult_of(d, f);
    if (missing > 0) out = out * f.poly(num.nvars()).pow(missing);
  }
  return out;
}

Factor ordered(Factor::Kind kind, int i, int j) {
  return Factor{kind, static_cast<std::int8_t>(std::min(i, j)), static_cast<std::int8_t>(std::max(i, j))};
}

}  // namespace

RatFun RatFun::constant(int nvars, const ParamRatio& c) { return RatFun(MultiPoly::constant(nvars, c)); }

RatFun RatFun::var(int nvars, int i, int e) { return RatFun(MultiPoly::monomial(nvars, Mono::var(i, e))); }

RatFun RatFun::make(MultiPoly num, Den den) {
  RatFun r(std::move(num));
  r.den_ = merge_den({}, den, true);
  r.reduce();
  return r;
}

RatFun RatFun::inv_diff(int nvars, int i, int j, int e, const ParamRatio& c) {
  // 1/(x_j - x_i)^e = (-1)^e / (x_i - x_j)^e
  ParamRatio cc = (i > j && e % 2 != 0) ? -c : c;
  return make(MultiPoly::constant(nvars, cc), {{ordered(Factor::Kind::Diff, i, j), e}});
}

RatFun RatFun::inv_sum(int nvars, int i, int j, int e, const ParamRatio& c) {
  return make(MultiPoly::constant(nvars, c), {{ordered(Factor::Kind::Sum, i, j), e}});
}

RatFun RatFun::inv_prod_minus_one(int nvars, int i, int j, int e, const ParamRatio& c) {
  return make(MultiPoly::constant(nvars, c), {{ordered(Factor::Kind::ProdMinusOne, i, j), e}});
}

RatFun RatFun::inv_minus_one(int nvars, int i, int e, const ParamRatio& c) {
  return make(MultiPoly::constant(nvars, c), {{Factor{Factor::Kind::MinusOne, static_cast<std::int8_t>(i)}, e}});
}

RatFun RatFun::inv_plus_one(int nvars, int i, int e, const ParamRatio& c) {
  return make(MultiPoly::constant(nvars, c), {{Factor{Factor::Kind::PlusOne, static_cast<std::int8_t>(i)}, e}});
}

void RatFun::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  Den kept;
  for (auto [f, e] : den_) {
    while (e > 0) {
      auto q = f.divide(num_);
      if (!q) break;
      num_ = *std::move(q);
      --e;
    }
    if (e > 0) kept.emplace_back(f, e);
  }
  den_ = std::move(kept);
}

std::optional<ParamRatio> RatFun::as_constant() const {
  if (!den_.empty() || !num_.is_constant()) return std::nullopt;
  return num_.constant_term();
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::operator+(const RatFun& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den_ == o.den_) {
    RatFun r(num_ + o.num_);
    r.den_ = den_;
    r.reduce();
    return r;
  }
  Den l = merge_den(den_, o.den_, false);
  RatFun r(lift(num_, den_, l) + lift(o.num_, o.den_, l));
  r.den_ = std::move(l);
  r.reduce();
  return r;
}

RatFun RatFun::operator-(const RatFun& o) const { return *this + (-o); }

RatFun RatFun::operator*(const RatFun& o) const {
  if (is_zero() || o.is_zero()) return RatFun(std::max(nvars(), o.nvars()));
  RatFun r(num_ * o.num_);
  r.den_ = merge_den(den_, o.den_, true);
  r.reduce();
  return r;
}

RatFun RatFun::scaled(const ParamRatio& c) const {
  if (c.is_zero()) return RatFun(nvars());
  RatFun r = *this;
  r.num_ = r.num_.scaled(c);
  return r;
}

RatFun RatFun::derivative(int i) const {
  // (N/D)' = N'/D - sum_f e_f N F_f' / (D F_f)
  const int n = nvars();
  MultiPoly lcm_num = num_.derivative(i);
  Den bigger = den_;
  for (auto& [f, e] : bigger) ++e;
  // Over the common denominator D * prod F_f.
  MultiPoly all_factors = MultiPoly::constant(n, ParamRatio(1));
  for (const auto& [f, e] : den_) all_factors = all_factors * f.poly(n);
  MultiPoly acc = lcm_num * all_factors;
  for (const auto& [f, e] : den_) {
    MultiPoly fp = f.poly(n).derivative(i);
    if (fp.is_zero()) continue;
    MultiPoly others = MultiPoly::constant(n, ParamRatio(1));
    for (const auto& [g, e2] : den_)
      if (!(g == f)) others = others * g.poly(n);
    acc -= (num_ * fp * others).scaled(ParamRatio(e));
  }
  return make(std::move(acc), std::move(bigger));
}

RatFun RatFun::substitute(const std::map<Symbol, ParamRatio>& bindings) const {
  return make(num_.substitute(bindings), den_);
}

std::string RatFun::to_string() const {
  std::string out = num_.terms().size() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
  if (den_.empty()) return out;
  std::string d;
  for (const auto& [f, e] : den_) {
    if (!d.empty()) d += "*";
    d += f.to_string();
    if (e != 1) d += "^" + std::to_string(e);
  }
  return out + "/(" + d + ")";
}

// ---------------------------------------------------------------- WeylOp

WeylOp WeylOp::mult(const RatFun& a) {
  WeylOp w(a.nvars());
  if (!a.is_zero()) w.terms_.emplace_back(Mono(), a);
  return w;
}

WeylOp WeylOp::constant(int nvars, const ParamRatio& c) { return mult(RatFun::constant(nvars, c)); }

WeylOp WeylOp::d(int nvars, int i) {
  WeylOp w(nvars);
  w.terms_.emplace_back(Mono::var(i), RatFun::constant(nvars, ParamRatio(1)));
  return w;
}

WeylOp WeylOp::euler(int nvars, int i) {
  WeylOp w(nvars);
  w.terms_.emplace_back(Mono::var(i), RatFun::var(nvars, i));
  return w;
}

WeylOp WeylOp::from_terms(int nvars, Terms t) {
  canonicalize(t);
  WeylOp w(nvars);
  w.terms_ = std::move(t);
  return w;
}

int WeylOp::order() const {
  int o = -1;
  for (const auto& [a, c] : terms_) o = std::max(o, a.total_degree(nvars_));
  return o;
}

std::optional<ParamRatio> WeylOp::as_constant() const {
  if (terms_.empty()) return ParamRatio(0);
  if (terms_.size() != 1 || !terms_[0].first.is_one()) return std::nullopt;
  return terms_[0].second.as_constant();
}

WeylOp WeylOp::without_constant() const {
  Terms out;
  for (const auto& [a, c] : terms_) {
    if (a.is_one()) {
      auto v = c.as_constant();
      if (v) continue;
    }
    out.emplace_back(a, c);
  }
  WeylOp w(nvars_);
  w.terms_ = std::move(out);
  return w;
}

WeylOp WeylOp::operator-() const {
  WeylOp w = *this;
  for (auto& t : w.terms_) t.second = -t.second;
  return w;
}

WeylOp WeylOp::operator+(const WeylOp& o) const {
  WeylOp w(std::max(nvars_, o.nvars_));
  w.terms_ = merge_terms(terms_, o.terms_, false);
  return w;
}

WeylOp WeylOp::operator-(const WeylOp& o) const {
  WeylOp w(std::max(nvars_, o.nvars_));
  w.terms_ = merge_terms(terms_, o.terms_, true);
  return w;
}

WeylOp WeylOp::scaled(const ParamRatio& c) const {
  if (c.is_zero()) return WeylOp(nvars_);
  WeylOp w = *this;
  for (auto& t : w.terms_) t.second = t.second.scaled(c);
  return w;
}

WeylOp WeylOp::left_mult(const RatFun& a) const {
  Terms out;
  for (const auto& [al, c] : terms_) out.emplace_back(al, a * c);
  return from_terms(nvars_, std::move(out));
}

namespace {

// d^gamma b, memoized per coefficient.
class DerivCache {
 public:
  explicit DerivCache(const RatFun& b) { cache_.emplace(Mono(), b); }
  const RatFun& get(const Mono& g, int nvars) {
    auto it = cache_.find(g);
    if (it != cache_.end()) return it->second;
    int v = 0;
    while (g.exp(v) == 0) ++v;
    RatFun lower = get(g.with_exp(v, g.exp(v) - 1), nvars);
    return cache_.emplace(g, lower.derivative(v)).first->second;
  }

 private:
  std::map<Mono, RatFun> cache_;
};

long binom(int n, int k) {
  long r = 1;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

// All gamma <= alpha componentwise.
void sub_indices(const Mono& alpha, int nvars, int v, Mono cur, std::vector<Mono>& out) {
  if (v == nvars) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= alpha.exp(v); ++e) sub_indices(alpha, nvars, v + 1, cur.with_exp(v, e), out);
}

}  // namespace

WeylOp WeylOp::operator*(const WeylOp& o) const {
  const int n = std::max(nvars_, o.nvars_);
  Terms out;
  for (const auto& [beta, b] : o.terms_) {
    DerivCache cache(b);
    for (const auto& [alpha, a] : terms_) {
      std::vector<Mono> gammas;
      sub_indices(alpha, n, 0, Mono(), gammas);
      for (const Mono& g : gammas) {
        const RatFun& db = cache.get(g, n);
        if (db.is_zero()) continue;
        long mult = 1;
        for (int v = 0; v < n; ++v) mult *= binom(alpha.exp(v), g.exp(v));
        out.emplace_back(alpha * g.inverse() * beta, (a * db).scaled(ParamRatio(mult)));
      }
    }
  }
  return from_terms(n, std::move(out));
}

RatFun WeylOp::apply(const RatFun& f) const {
  // One reduction over the common denominator instead of one per term.
  DerivCache cache(f);
  const int n = std::max(nvars_, f.nvars());
  std::vector<std::pair<MultiPoly, Den>> parts;
  Den common;
  for (const auto& [alpha, a] : terms_) {
    const RatFun& df = cache.get(alpha, nvars_);
    if (df.is_zero()) continue;
    parts.emplace_back(a.num() * df.num(), merge_den(a.den(), df.den(), true));
    common = merge_den(common, parts.back().second, false);
  }
  MultiPoly acc(n);
  for (const auto& [num, den] : parts) acc += lift(num, den, common);
  return RatFun::make(std::move(acc), std::move(common));
}

WeylOp WeylOp::substitute(const std::map<Symbol, ParamRatio>& bindings) const {
  Terms out;
  for (const auto& [a, c] : terms_) out.emplace_back(a, c.substitute(bindings));
  return from_terms(nvars_, std::move(out));
}

std::string WeylOp::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [a, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.to_string();
    for (int v = 0; v < nvars_; ++v) {
      int e = a.exp(v);
      if (e == 0) continue;
      out += " * d" + std::to_string(v + 1);
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

WeylOp compose(const WeylOp& a, const WeylOp& b) { return a * b; }

WeylOp commutator(const WeylOp& a, const WeylOp& b) { return a * b - b * a; }

// ---------------------------------------------------------------- OpMatrix

OpMatrix::OpMatrix(int rows, int cols, int nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), e_(static_cast<std::size_t>(rows * cols), WeylOp(nvars)) {}

OpMatrix OpMatrix::operator+(const OpMatrix& o) const {
  OpMatrix r = *this;
  for (std::size_t t = 0; t < e_.size(); ++t) r.e_[t] = e_[t] + o.e_[t];
  return r;
}

OpMatrix OpMatrix::operator-(const OpMatrix& o) const {
  OpMatrix r = *this;
  for (std::size_t t = 0; t < e_.size(); ++t) r.e_[t] = e_[t] - o.e_[t];
  return r;
}

OpMatrix OpMatrix::multiply(const OpMatrix& o, bool parallel) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shapes do not match");
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) cells.emplace_back(i, j);
  auto entry = [&](const std::pair<int, int>& c) {
    WeylOp acc(nvars_);
    for (int t = 0; t < cols_; ++t) {
      const WeylOp& a = at(c.first, t);
      const WeylOp& b = o.at(t, c.second);
      if (!a.is_zero() && !b.is_zero()) acc += a * b;
    }
    return acc;
  };
  auto vals = parallel ? parallel_map(cells, entry) : serial_map(cells, entry);
  OpMatrix r(rows_, o.cols_, nvars_);
  for (std::size_t t = 0; t < cells.size(); ++t) r.at(cells[t].first, cells[t].second) = std::move(vals[t]);
  return r;
}

OpMatrix OpMatrix::pow(int r, bool parallel) const {
  if (r < 1) throw std::invalid_argument("matrix power must be positive");
  OpMatrix acc = *this;
  for (int t = 1; t < r; ++t) acc = acc.multiply(*this, parallel);
  return acc;
}

bool OpMatrix::operator==(const OpMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

std::vector<std::string> OpMatrix::entry_strings() const {
  std::vector<std::string> out;
  out.reserve(e_.size());
  for (const auto& w : e_) out.push_back(w.to_string());
  return out;
}

// ---------------------------------------------------------------- Moser matrices

namespace {

ParamRatio kp(const Params& pr, const Parity& par, int i) { return k_power(pr, par.of(i)); }
ParamRatio kp1(const Params& pr, const Parity& par, int j) { return k_power(pr, 1 - par.of(j)); }
// k^{1-p(i)-p(j)}
ParamRatio kpair(const Params& pr, const Parity& par, int i, int j) {
  return k_power(pr, 1 - par.of(i) - par.of(j));
}

// (x_i + x_j)/(x_i - x_j) * c
RatFun cot_like(int n, int i, int j, const ParamRatio& c) {
  return (RatFun::var(n, i) + RatFun::var(n, j)) * RatFun::inv_diff(n, i, j, 1, c);
}

// (x_i x_j + 1)/(x_i x_j - 1) * c
RatFun cot_like_inv(int n, int i, int j, const ParamRatio& c) {
  RatFun num(MultiPoly::monomial(n, Mono::var(i) * Mono::var(j)) + MultiPoly::constant(n, ParamRatio(1)));
  return num * RatFun::inv_prod_minus_one(n, i, j, 1, c);
}

// Diagonal and off-diagonal blocks shared by L and its gauged version.
OpMatrix type_a_block(Family family, const Params& pr, const Parity& par) {
  const int n = par.size();
  OpMatrix L(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        L.at(i, i) = (is_trig(family) ? WeylOp::euler(n, i) : WeylOp::d(n, i)).scaled(kp(pr, par, i));
      } else if (is_trig(family)) {
        L.at(i, j) = WeylOp::mult(cot_like(n, i, j, kp1(pr, par, j) / 2));
      } else {
        L.at(i, j) = WeylOp::mult(RatFun::inv_diff(n, i, j, 1, kp1(pr, par, j)));
      }
    }
  return L;
}

const ParamRatio& mu(const Params& pr, const Parity& par, int i) { return par.of(i) == 0 ? pr.p : pr.r; }
const ParamRatio& nu(const Params& pr, const Parity& par, int i) { return par.of(i) == 0 ? pr.q : pr.s; }

}  // namespace

OpMatrix moser_L(Family family, const Params& pr, const Parity& par) {
  if (!is_type_b(family)) return type_a_block(family, pr, par);
  const int n = par.size();
  OpMatrix A = type_a_block(family == Family::RatB ? Family::RatA : Family::TrigA, pr, par);
  OpMatrix B(n, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RatFun b(n);
      if (family == Family::RatB) {
        b = i == j ? RatFun::var(n, i, -1).scaled(kp(pr, par, i) * nu(pr, par, i))
                   : RatFun::inv_sum(n, i, j, 1, kp1(pr, par, j));
      } else if (i == j) {
        RatFun xp1(MultiPoly::var(n, i) + MultiPoly::constant(n, ParamRatio(1)));
        RatFun x2p1(MultiPoly::monomial(n, Mono::var(i, 2)) + MultiPoly::constant(n, ParamRatio(1)));
        b = xp1 * RatFun::inv_minus_one(n, i, 1, kp(pr, par, i) * mu(pr, par, i) / 2) +
            x2p1 * RatFun::inv_minus_one(n, i) * RatFun::inv_plus_one(n, i, 1, kp(pr, par, i) * nu(pr, par, i));
      } else {
        b = cot_like_inv(n, i, j, kp1(pr, par, j) / 2);
      }
      B.at(i, j) = WeylOp::mult(b);
    }
  OpMatrix L(2 * n, 2 * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      L.at(i, j) = A.at(i, j);
      L.at(i, n + j) = B.at(i, j);
      L.at(n + i, j) = -B.at(i, j);
      L.at(n + i, n + j) = -A.at(i, j);
    }
  return L;
}

OpMatrix moser_M(Family family, const Params& pr, const Parity& par) {
  if (is_type_b(family)) throw UnsupportedFamily(std::string("no M matrix for ") + family_name(family));
  const int n = par.size();
  OpMatrix M(n, n, n);
  for (int i = 0; i < n; ++i) {
    RatFun diag(n);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      RatFun v = RatFun::inv_diff(n, i, j, 2, kp1(pr, par, j) * 2);
      if (family == Family::TrigA) v = v * RatFun(MultiPoly::monomial(n, Mono::var(i) * Mono::var(j)));
      M.at(i, j) = WeylOp::mult(v);
      diag -= v;
    }
    M.at(i, i) = WeylOp::mult(diag);
  }
  return M;
}

OpMatrix gauged_moser_L(Family family, const Params& pr, const Parity& par) {
  if (is_type_b(family)) throw UnsupportedFamily(std::string("no gauged Moser matrix for ") + family_name(family));
  OpMatrix L = type_a_block(family, pr, par);
  const int n = par.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i) L.at(i, i) -= L.at(i, j);
  return L;
}

std::vector<ParamRatio> e_star(Family family, const Params& pr, const Parity& par) {
  std::vector<ParamRatio> e;
  for (int copy = 0; copy < (is_type_b(family) ? 2 : 1); ++copy)
    for (int i = 0; i < par.size(); ++i) e.push_back(deformed_weight(pr, par, i));
  return e;
}

WeylOp total_trace(const OpMatrix& x, const std::vector<ParamRatio>& estar) {
  WeylOp acc(x.nvars());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) acc += x.at(i, j).scaled(estar.at(static_cast<std::size_t>(i)));
  return acc;
}

WeylOp moser_integral(Family family, const Params& pr, const Parity& par, int r, bool parallel) {
  const int power = is_type_b(family) ? 2 * r : r;
  return total_trace(moser_L(family, pr, par).pow(power, parallel), e_star(family, pr, par));
}

WeylOp gauged_moser_integral(Family family, const Params& pr, const Parity& par, int r, bool parallel) {
  return total_trace(gauged_moser_L(family, pr, par).pow(r, parallel), e_star(family, pr, par));
}

// ---------------------------------------------------------------- Hamiltonians

WeylOp hamiltonian(Family family, const Params& pr, const Parity& par, bool gauged) {
  const int n = par.size();
  const ParamRatio one(1);
  auto D = [&](int i) { return is_trig(family) ? WeylOp::euler(n, i) : WeylOp::d(n, i); };
  WeylOp H(n);
  for (int i = 0; i < n; ++i) H += (D(i) * D(i)).scaled(kp(pr, par, i));

  if (gauged) {
    if (is_type_b(family) && par.m != 0)
      throw UnsupportedFamily(std::string("gauged ") + family_name(family) + " Hamiltonian needs m = 0");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        // (k^{1-p(j)} D_i - k^{1-p(i)} D_j) weighted by the pair factor.
        WeylOp diff = D(i).scaled(kp1(pr, par, j)) - D(j).scaled(kp1(pr, par, i));
        switch (family) {
          case Family::RatA: H -= diff.left_mult(RatFun::inv_diff(n, i, j, 1, ParamRatio(2))); break;
          case Family::TrigA: H -= diff.left_mult(cot_like(n, i, j, one)); break;
          case Family::RatB:
            H -= (D(i) - D(j)).left_mult(RatFun::inv_diff(n, i, j, 1, pr.k * 2));
            H -= (D(i) + D(j)).left_mult(RatFun::inv_sum(n, i, j, 1, pr.k * 2));
            break;
          case Family::TrigBC:
            H -= (D(i) - D(j)).left_mult(cot_like(n, i, j, pr.k));
            H -= (D(i) + D(j)).left_mult(cot_like_inv(n, i, j, pr.k));
            break;
        }
      }
    for (int i = 0; i < n; ++i) {
      if (family == Family::RatB) H -= D(i).left_mult(RatFun::var(n, i, -1).scaled(pr.q * 2));
      if (family == Family::TrigBC) {
        RatFun xp1(MultiPoly::var(n, i) + MultiPoly::constant(n, one));
        RatFun x2p1(MultiPoly::monomial(n, Mono::var(i, 2)) + MultiPoly::constant(n, one));
        RatFun c = xp1 * RatFun::inv_minus_one(n, i, 1, pr.p) +
                   x2p1 * RatFun::inv_minus_one(n, i) * RatFun::inv_plus_one(n, i, 1, pr.q * 2);
        H -= D(i).left_mult(c);
      }
    }
    return H;
  }

  // Pair coupling 2(k+1) k^{1-p(i)-p(j)}: 2k(k+1), 2(k^-1+1), 2(k+1).
  auto pair = [&](int i, int j) { return (pr.k + 1) * kpair(pr, par, i, j) * 2; };
  RatFun pot(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const RatFun xixj(MultiPoly::monomial(n, Mono::var(i) * Mono::var(j)));
      switch (family) {
        case Family::RatA: pot -= RatFun::inv_diff(n, i, j, 2, pair(i, j)); break;
        case Family::TrigA: pot -= xixj * RatFun::inv_diff(n, i, j, 2, pair(i, j)); break;
        case Family::RatB:
          pot += RatFun::inv_diff(n, i, j, 2, pair(i, j)) + RatFun::inv_sum(n, i, j, 2, pair(i, j));
          break;
        case Family::TrigBC:
          // The mixed x-y pairs carry only the (x_i - y_j)^-2 term.
          pot -= xixj * RatFun::inv_diff(n, i, j, 2, pair(i, j) * 4);
          if (par.of(i) == par.of(j)) pot -= xixj * RatFun::inv_prod_minus_one(n, i, j, 2, pair(i, j) * 4);
          break;
      }
    }
  for (int i = 0; i < n; ++i) {
    const ParamRatio w = kp(pr, par, i);
    if (family == Family::RatB) {
      const ParamRatio& m = nu(pr, par, i);
      pot += RatFun::var(n, i, -2).scaled(w * m * (m + 1));
    }
    if (family == Family::TrigBC) {
      const ParamRatio& a = mu(pr, par, i);
      const ParamRatio& b = nu(pr, par, i);
      pot -= RatFun::var(n, i) * RatFun::inv_minus_one(n, i, 2, w * a * (a + b * 2 + 1) * 4);
      pot -= RatFun::var(n, i, 2) * RatFun::inv_minus_one(n, i, 2) *
             RatFun::inv_plus_one(n, i, 2, w * b * (b + 1) * 16);
    }
  }
  if (family == Family::RatB) H = -H;
  return H + WeylOp::mult(pot);
}

WeylOp trig_bc_consistent_hamiltonian(const Params& pr, const Parity& par) {
  const int n = par.size();
  WeylOp H = hamiltonian(Family::TrigBC, pr, par, false);
  for (int i = 0; i < n; ++i)
    H += (WeylOp::euler(n, i) * WeylOp::euler(n, i)).scaled(kp(pr, par, i) * 3);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (par.of(i) == par.of(j)) continue;
      const RatFun xixj(MultiPoly::monomial(n, Mono::var(i) * Mono::var(j)));
      H -= WeylOp::mult(xixj * RatFun::inv_prod_minus_one(n, i, j, 2, (pr.k + 1) * 8));
    }
  return H;
}

std::vector<RatFun> ground_state_logderivs(Family family, const Params& pr, const Parity& par) {
  if (is_type_b(family)) throw UnsupportedFamily(std::string("no ground state for ") + family_name(family));
  const int n = par.size();
  std::vector<RatFun> w(n, RatFun(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const ParamRatio c = kpair(pr, par, i, j);
      if (family == Family::RatA) {
        w[i] += RatFun::inv_diff(n, i, j, 1, c);
      } else {
        // d_i of c log((x_i - x_j) / sqrt(x_i x_j))
        w[i] += cot_like(n, i, j, c / 2) * RatFun::var(n, i, -1);
      }
    }
  return w;
}

WeylOp gauge_conjugate(const WeylOp& op, const std::vector<RatFun>& w) {
  const int n = op.nvars();
  std::map<std::pair<int, int>, WeylOp> powers;
  auto shifted_pow = [&](int i, int e) -> const WeylOp& {
    auto key = std::make_pair(i, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    WeylOp s = WeylOp::d(n, i) + WeylOp::mult(w.at(static_cast<std::size_t>(i)));
    WeylOp acc = WeylOp::constant(n, ParamRatio(1));
    for (int t = 0; t < e; ++t) acc = acc * s;
    return powers.emplace(key, std::move(acc)).first->second;
  };
  WeylOp out(n);
  for (const auto& [alpha, a] : op.terms()) {
    WeylOp term = WeylOp::mult(a);
    for (int v = 0; v < n; ++v)
      if (alpha.exp(v) > 0) term = term * shifted_pow(v, alpha.exp(v));
    out += term;
  }
  return out;
}

std::vector<LaxEntry> lax_check(Family family, const Params& pr, const Parity& par, bool parallel) {
  if (is_type_b(family)) throw UnsupportedFamily(std::string("no Lax pair for ") + family_name(family));
  const OpMatrix L = moser_L(family, pr, par);
  const OpMatrix M = moser_M(family, pr, par);
  const WeylOp H = hamiltonian(family, pr, par, false);
  const int n = par.size();
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cells.emplace_back(i, j);
  auto entry = [&](const std::pair<int, int>& c) {
    auto [i, j] = c;
    WeylOp r = commutator(L.at(i, j), H);
    for (int t = 0; t < n; ++t) r -= L.at(i, t) * M.at(t, j) - M.at(i, t) * L.at(t, j);
    return r;
  };
  auto vals = parallel ? parallel_map(cells, entry) : serial_map(cells, entry);
  std::vector<LaxEntry> out;
  for (std::size_t t = 0; t < cells.size(); ++t)
    if (!vals[t].is_zero()) out.push_back({cells[t].first, cells[t].second, vals[t]});
  return out;
}

// ---------------------------------------------------------------- basis checks

namespace {

void gen_monos(int nvars, int v, int budget, bool laurent, Mono cur, std::vector<Mono>& out) {
  if (v == nvars) {
    out.push_back(cur);
    return;
  }
  for (int e = laurent ? -budget : 0; e <= budget; ++e)
    gen_monos(nvars, v + 1, budget - std::abs(e), laurent, cur.with_exp(v, e), out);
}

}  // namespace

std::vector<Mono> monomials_up_to(int nvars, int deg, bool laurent) {
  std::vector<Mono> out;
  gen_monos(nvars, 0, deg, laurent, Mono(), out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BasisResidual> commute_on_basis(const WeylOp& a, const WeylOp& b, int deg, bool laurent, bool parallel) {
  const int n = std::max(a.nvars(), b.nvars());
  auto monos = monomials_up_to(n, deg, laurent);
  auto eval = [&](const Mono& m) {
    RatFun f(MultiPoly::monomial(n, m));
    return a.apply(b.apply(f)) - b.apply(a.apply(f));
  };
  auto vals = parallel ? parallel_map(monos, eval) : serial_map(monos, eval);
  std::vector<BasisResidual> out;
  for (std::size_t t = 0; t < monos.size(); ++t)
    if (!vals[t].is_zero()) out.push_back({monos[t], vals[t]});
  return out;
}

std::optional<AffineMatch> affine_match(const WeylOp& a, const WeylOp& b) {
  WeylOp bb = b.without_constant();
  if (bb.is_zero()) return std::nullopt;
  const auto& [key, bc] = bb.terms().back();
  const RatFun* ac = nullptr;
  for (const auto& [k2, c2] : a.terms())
    if (k2 == key) ac = &c2;
  if (ac == nullptr || !(ac->den() == bc.den()) || ac->num().terms().empty()) return std::nullopt;
  const auto& lead_b = bc.num().terms().back();
  const auto& lead_a = ac->num().terms().back();
  if (!(lead_a.first == lead_b.first)) return std::nullopt;
  ParamRatio scale = lead_a.second / lead_b.second;
  auto rest = (a - b.scaled(scale)).as_constant();
  if (!rest) return std::nullopt;
  return AffineMatch{scale, *rest};
}

}  // namespace cms
