#include "cms/dunkl_infinity.hpp"

#include <cstdlib>
#include <stdexcept>

#include "cms/error.hpp"
#include "cms/parallel.hpp"

namespace cms {

InfDunkl::InfDunkl(Family family, Params params)
    : family_(family),
      params_(std::move(params)),
      k_(params_.k),
      half_k_(params_.k * ParamRatio::fraction(1, 2)),
      two_k_(params_.k * ParamRatio(2)),
      half_p_(params_.p * ParamRatio::fraction(1, 2)) {}

LambdaXElem InfDunkl::apply(const LambdaXElem& f) const {
  LambdaXElem d = partial(f, family_);
  switch (family_) {
    case Family::RatA: return d - delta(f, family_).scaled(k_);
    case Family::TrigA: return d - delta(f, family_).scaled(half_k_);
    case Family::RatB: {
      // (q/x)(1 - tau) f: odd x-powers survive twice, shifted down by one.
      LambdaXElem::Terms refl;
      for (const auto& [key, c] : f.terms())
        if (key.xexp % 2 != 0) refl.emplace_back(XPKey{key.xexp - 1, key.mono}, c * ParamRatio(2));
      LambdaXElem r = LambdaXElem::from_terms(std::move(refl), false);
      return d - delta(f, family_).scaled(two_k_) - r.scaled(params_.q);
    }
    case Family::TrigBC: {
      LambdaXElem g = f - reflect(f, family_);
      LambdaXElem a = div_x_poly(mul_x_poly(g, {{1, 1}, {0, 1}}), {{1, 1}, {0, -1}});
      LambdaXElem b = div_x_poly(mul_x_poly(g, {{2, 1}, {0, 1}}), {{2, 1}, {0, -1}});
      return d - delta(f, family_).scaled(half_k_) - a.scaled(half_p_) - b.scaled(params_.q);
    }
  }
  throw UnsupportedFamily("unknown family");
}

LambdaXElem InfDunkl::apply(const LambdaXElem& f, int times) const {
  LambdaXElem out = f;
  for (int i = 0; i < times; ++i) out = apply(out);
  return out;
}

LambdaElem InfDunkl::integral(int r, const LambdaElem& f) const {
  LambdaXElem g = LambdaXElem::from_lambda(f, laurent());
  return project_E(apply(g, power_for(r)), family_);
}

LambdaXElem apply_D(const InfDunkl& op, const LambdaXElem& f, int r) { return op.apply(f, r); }

LambdaElem integral_L(const InfDunkl& op, int r, const LambdaElem& f) { return op.integral(r, f); }

// ---------------------------------------------------------------- IntegralTable

namespace {

std::pair<unsigned, PMonomial> split_p0(const PMonomial& m) {
  unsigned e = m.exp(0);
  PMonomial rest = m;
  for (unsigned i = 0; i < e; ++i) rest = rest.without_one(0);
  return {e, rest};
}

}  // namespace

void IntegralTable::precompute(const std::vector<PMonomial>& basis, bool parallel) {
  std::vector<PMonomial> todo;
  for (const auto& m : basis) {
    PMonomial rest = split_p0(m).second;
    if (!cache_.count(rest)) todo.push_back(rest);
  }
  std::sort(todo.begin(), todo.end());
  todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
  auto eval = [this](const PMonomial& m) { return op_.integral(r_, LambdaElem::monomial(m)); };
  std::vector<LambdaElem> values = parallel ? parallel_map(todo, eval) : serial_map(todo, eval);
  for (std::size_t i = 0; i < todo.size(); ++i) cache_.emplace(todo[i], std::move(values[i]));
}

const LambdaElem& IntegralTable::on_monomial(const PMonomial& m) {
  auto it = cache_.find(m);
  if (it == cache_.end()) it = cache_.emplace(m, op_.integral(r_, LambdaElem::monomial(m))).first;
  return it->second;
}

LambdaElem IntegralTable::apply(const LambdaElem& f) {
  LambdaElem::Terms out;
  for (const auto& [m, c] : f.terms()) {
    auto [e0, rest] = split_p0(m);
    PMonomial p0 = e0 ? PMonomial::p(0, e0) : PMonomial{};
    for (const auto& [mm, cc] : on_monomial(rest).terms()) out.emplace_back(mm * p0, cc * c);
  }
  return LambdaElem::from_terms(std::move(out));
}

// ---------------------------------------------------------------- LambdaDiffOp

LambdaDiffOp LambdaDiffOp::from_terms(Terms t) {
  canonicalize(t);
  LambdaDiffOp op;
  op.terms_ = std::move(t);
  return op;
}

int LambdaDiffOp::order() const {
  int ord = 0;
  for (const auto& [key, c] : terms_) {
    int o = 0;
    for (int i = 0; i < kPSlots; ++i) o += static_cast<int>(key.derivs.exp(i));
    ord = std::max(ord, o);
  }
  return ord;
}

LambdaElem LambdaDiffOp::apply(const LambdaElem& f) const {
  LambdaElem::Terms out;
  for (const auto& [key, c] : terms_) {
    const int top = key.derivs.max_index();
    for (const auto& [m, fc] : f.terms()) {
      if (!key.derivs.divides(m)) continue;
      BigInt factor = 1;
      for (int a = 1; a <= top; ++a) {
        unsigned want = key.derivs.exp(a);
        unsigned have = m.exp(a);
        for (unsigned j = 0; j < want; ++j) factor *= BigInt(a) * BigInt(have - j);
      }
      out.emplace_back(key.coeff * key.derivs.quotient_of(m), c * fc * ParamRatio(BigRat(factor)));
    }
  }
  return LambdaElem::from_terms(std::move(out));
}

LambdaDiffOp LambdaDiffOp::truncated(int deg) const {
  LambdaDiffOp op;
  for (const auto& t : terms_)
    if (t.first.derivs.degree() <= deg) op.terms_.push_back(t);
  return op;
}

LambdaDiffOp LambdaDiffOp::operator-(const LambdaDiffOp& o) const {
  LambdaDiffOp op;
  op.terms_ = merge_terms(terms_, o.terms_, true);
  return op;
}

std::string LambdaDiffOp::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += coeff_text(c);
    if (!key.coeff.is_one()) out += "*" + key.coeff.to_string();
    for (int a = 0; a < kPSlots; ++a)
      for (unsigned j = 0; j < key.derivs.exp(a); ++j) out += "*D[" + std::to_string(a) + "]";
  }
  return out;
}

// ---------------------------------------------------------------- closed forms

namespace {

class OpBuilder {
 public:
  explicit OpBuilder(int window) : window_(window) {}

  // c * (prod of p_i for i in ps) * D[a] (* D[b] when b > 0).
  void add(std::initializer_list<int> ps, int a, int b, const ParamRatio& c) {
    if (a > window_ || b > window_ || c.is_zero()) return;
    PMonomial coeff;
    for (int i : ps) coeff = coeff * PMonomial::p(std::abs(i));
    PMonomial d = PMonomial::p(a);
    if (b > 0) d = d * PMonomial::p(b);
    terms_.emplace_back(DiffKey{coeff, d}, c);
  }

  LambdaDiffOp build() { return LambdaDiffOp::from_terms(std::move(terms_)); }

 private:
  int window_;
  LambdaDiffOp::Terms terms_;
};

LambdaDiffOp rat_a(const Params& P, int W) {
  OpBuilder b(W);
  const ParamRatio& k = P.k;
  for (int a = 1; a <= W; ++a)
    for (int c = 1; c <= W; ++c) b.add({a + c - 2}, a, c, ParamRatio(1));
  for (int a = 0; a + 2 <= W; ++a)
    for (int c = 0; a + c + 2 <= W; ++c) b.add({a, c}, a + c + 2, 0, -k);
  for (int a = 2; a <= W; ++a) b.add({a - 2}, a, 0, (k + 1) * ParamRatio(a - 1));
  return b.build();
}

LambdaDiffOp trig_a(const Params& P, int W) {
  OpBuilder b(W);
  const ParamRatio& k = P.k;
  for (int a = 1; a <= W; ++a)
    for (int c = 1; c <= W; ++c) b.add({a + c}, a, c, ParamRatio(1));
  for (int a = 1; a < W; ++a)
    for (int c = 1; a + c <= W; ++c) b.add({a, c}, a + c, 0, -k);
  for (int a = 1; a <= W; ++a) {
    b.add({a}, a, 0, (k + 1) * ParamRatio(a));
    b.add({0, a}, a, 0, -k);
  }
  return b.build();
}

LambdaDiffOp rat_b(const Params& P, int W, ClosedFormVariant v) {
  OpBuilder b(W);
  const ParamRatio& k = P.k;
  const ParamRatio& q = P.q;
  const long second = v == ClosedFormVariant::Transcribed ? 8 : 4;
  for (int a = 1; a <= W; ++a)
    for (int c = 1; c <= W; ++c) b.add({a + c - 1}, a, c, ParamRatio(second));
  for (int a = 0; a + 1 <= W; ++a)
    for (int c = 0; a + c + 1 <= W; ++c) b.add({a, c}, a + c + 1, 0, k * ParamRatio(-4));
  for (int a = 0; a + 1 <= W; ++a)
    b.add({a}, a + 1, 0, k * ParamRatio(4L * (a + 1)) + ParamRatio(2L * (2 * a + 1)) - q * ParamRatio(4));
  return b.build();
}

LambdaDiffOp trig_bc(const Params& P, int W, ClosedFormVariant v) {
  OpBuilder b(W);
  const ParamRatio& k = P.k;
  const bool lit = v == ClosedFormVariant::Transcribed;
  // Transcribed: the p and q terms carry half the weight of the expansion.
  const ParamRatio p = lit ? P.p * ParamRatio::fraction(1, 2) : P.p;
  const ParamRatio q = lit ? P.q * ParamRatio::fraction(1, 2) : P.q;
  const long second = lit ? 4 : 2;
  for (int a = 1; a <= W; ++a)
    for (int c = 1; c <= W; ++c) {
      b.add({a + c}, a, c, ParamRatio(second));
      b.add({a - c}, a, c, ParamRatio(-second));
    }
  // 2(ak + a + k + h) p_a D[a] with h = -k p_0 - p - 2q.
  for (int a = 1; a <= W; ++a) {
    b.add({a}, a, 0, ParamRatio(2) * (k * ParamRatio(a) + ParamRatio(a) + k - p - q * ParamRatio(2)));
    b.add({0, a}, a, 0, k * ParamRatio(-2));
  }
  for (int a = 2; a <= W; ++a)
    for (int j = 1; j <= a - 1; ++j) {
      b.add({a - 2 * j}, a, 0, ParamRatio(2) * (k - q * ParamRatio(2)));
      b.add({j, a - j}, a, 0, k * ParamRatio(-2));
    }
  for (int a = lit ? 2 : 1; a <= W; ++a)
    for (int j = 1; j <= 2 * a - 1; ++j) b.add({a - j}, a, 0, p * ParamRatio(-2));
  return b.build();
}

}  // namespace

LambdaDiffOp closed_form_L2(Family family, const Params& params, int window, ClosedFormVariant variant) {
  if (window < 0) window = 0;
  switch (family) {
    case Family::RatA: return rat_a(params, window);
    case Family::TrigA: return trig_a(params, window);
    case Family::RatB: return rat_b(params, window, variant);
    case Family::TrigBC: return trig_bc(params, window, variant);
  }
  throw UnsupportedFamily("unknown family");
}

LambdaElem apply_closed_form(Family family, const Params& params, const LambdaElem& f, ClosedFormVariant variant) {
  int window = 0;
  for (const auto& [m, c] : f.terms()) window = std::max(window, m.max_index());
  return closed_form_L2(family, params, window, variant).apply(f);
}

// ---------------------------------------------------------------- reconstruction

LambdaDiffOp reconstruct_diff_op(const InfDunkl& op, int r, int deg) {
  // L(p^alpha) = sum_{beta <= alpha} c_beta alpha!/(alpha-beta)! p^{alpha-beta}
  // with L = sum c_beta (d/dp)^beta; solve for c_alpha in degree order.
  std::vector<PMonomial> basis = monomial_basis(deg, deg);
  IntegralTable table(op, r);
  table.precompute(basis);

  std::vector<std::pair<PMonomial, LambdaElem>> plain;  // beta -> c_beta, plain derivatives
  for (const auto& alpha : basis) {
    LambdaElem residual = table.on_monomial(alpha);
    for (const auto& [beta, cb] : plain) {
      if (!beta.divides(alpha)) continue;
      BigInt factor = 1;
      for (int i = 1; i <= beta.max_index(); ++i)
        for (unsigned j = 0; j < beta.exp(i); ++j) factor *= BigInt(alpha.exp(i) - j);
      residual = residual - cb * LambdaElem::monomial(beta.quotient_of(alpha), ParamRatio(BigRat(factor)));
    }
    if (residual.is_zero()) continue;
    BigInt afact = 1;
    for (int i = 1; i <= alpha.max_index(); ++i)
      for (unsigned j = 2; j <= alpha.exp(i); ++j) afact *= j;
    plain.emplace_back(alpha, residual.scaled(ParamRatio(BigRat(1, afact))));
  }

  LambdaDiffOp::Terms terms;
  for (const auto& [beta, cb] : plain) {
    // d/dp_a = D[a] / a
    BigInt scale = 1;
    for (int i = 1; i <= beta.max_index(); ++i)
      for (unsigned j = 0; j < beta.exp(i); ++j) scale *= i;
    for (const auto& [m, c] : cb.terms()) terms.emplace_back(DiffKey{m, beta}, c * ParamRatio(BigRat(1, scale)));
  }
  return LambdaDiffOp::from_terms(std::move(terms));
}

// ---------------------------------------------------------------- commutators

std::vector<std::pair<PMonomial, LambdaElem>> commutator_on_basis(const InfDunkl& op, int r, int s, int deg,
                                                                   int pwindow, bool parallel) {
  std::vector<PMonomial> basis = monomial_basis(deg, pwindow);
  // The integrals never raise degree, so every monomial reached lies in the
  // full degree-deg basis.
  std::vector<PMonomial> full = monomial_basis(deg, deg);
  IntegralTable lr(op, r), ls(op, s);
  lr.precompute(full, parallel);
  ls.precompute(full, parallel);
  auto comm = [&](const PMonomial& m) {
    LambdaElem f = LambdaElem::monomial(m);
    return lr.apply(ls.apply(f)) - ls.apply(lr.apply(f));
  };
  std::vector<std::pair<PMonomial, LambdaElem>> out;
  out.reserve(basis.size());
  for (const auto& m : basis) out.emplace_back(m, comm(m));
  return out;
}

LambdaElem ad_power_residual(const InfDunkl& op, int r, const LambdaElem& f, int n, const LambdaElem& g) {
  // ad(f)^n(L)(g) = sum_j C(n,j) (-f)^{n-j} L(f^j g)
  LambdaElem out;
  LambdaElem fj = g;
  BigInt binom = 1;
  for (int j = 0; j <= n; ++j) {
    LambdaElem term = op.integral(r, fj);
    for (int t = 0; t < n - j; ++t) term = term * f;
    ParamRatio c{BigRat(binom)};
    if ((n - j) % 2 != 0) c = -c;
    out = out + term.scaled(c);
    fj = fj * f;
    binom = binom * (n - j) / (j + 1);
  }
  return out;
}

}  // namespace cms
