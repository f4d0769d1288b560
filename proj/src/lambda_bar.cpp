#include "cms/lambda_bar.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "cms/error.hpp"

namespace cms {

// ---------------------------------------------------------------- PMonomial

PMonomial PMonomial::p(int index, unsigned mult) {
  if (index < 0 || index >= kPSlots) throw std::out_of_range("p-index out of range: " + std::to_string(index));
  if (mult > 0xffu) throw std::overflow_error("p multiplicity exceeds 255");
  PMonomial m;
  m.e_[static_cast<std::size_t>(index)] = static_cast<std::uint8_t>(mult);
  m.deg_ = index * static_cast<int>(mult);
  return m;
}

int PMonomial::max_index() const {
  for (int i = kPSlots - 1; i >= 0; --i)
    if (e_[static_cast<std::size_t>(i)] != 0) return i;
  return -1;
}

PMonomial PMonomial::operator*(const PMonomial& o) const {
  PMonomial m;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    unsigned s = e_[i] + o.e_[i];
    if (s > 0xffu) throw std::overflow_error("p multiplicity exceeds 255");
    m.e_[i] = static_cast<std::uint8_t>(s);
  }
  m.deg_ = deg_ + o.deg_;
  return m;
}

PMonomial PMonomial::without_one(int index) const {
  PMonomial m = *this;
  --m.e_[static_cast<std::size_t>(index)];
  m.deg_ -= index;
  return m;
}

bool PMonomial::divides(const PMonomial& o) const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

PMonomial PMonomial::quotient_of(const PMonomial& o) const {
  PMonomial m;
  for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = static_cast<std::uint8_t>(o.e_[i] - e_[i]);
  m.deg_ = o.deg_ - deg_;
  return m;
}

std::string PMonomial::to_string() const {
  std::string out;
  for (int i = 0; i < kPSlots; ++i) {
    unsigned e = exp(i);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += "p" + std::to_string(i);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

std::string coeff_text(const ParamRatio& c) {
  if (c.den().is_one()) return "(" + c.num().to_string() + ")";
  return c.to_string();
}

// ---------------------------------------------------------------- LambdaElem

LambdaElem LambdaElem::constant(const ParamRatio& c) { return monomial(PMonomial{}, c); }

LambdaElem LambdaElem::p(int index, unsigned mult) { return monomial(PMonomial::p(index, mult)); }

LambdaElem LambdaElem::monomial(const PMonomial& m, const ParamRatio& c) {
  LambdaElem e;
  if (!c.is_zero()) e.terms_.emplace_back(m, c);
  return e;
}

LambdaElem LambdaElem::from_terms(Terms t) {
  canonicalize(t);
  LambdaElem e;
  e.terms_ = std::move(t);
  return e;
}

int LambdaElem::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

LambdaElem LambdaElem::operator-() const {
  LambdaElem e = *this;
  for (auto& t : e.terms_) t.second = -t.second;
  return e;
}

LambdaElem LambdaElem::operator+(const LambdaElem& o) const {
  LambdaElem e;
  e.terms_ = merge_terms(terms_, o.terms_, false);
  return e;
}

LambdaElem LambdaElem::operator-(const LambdaElem& o) const {
  LambdaElem e;
  e.terms_ = merge_terms(terms_, o.terms_, true);
  return e;
}

LambdaElem LambdaElem::operator*(const LambdaElem& o) const {
  Terms out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) out.emplace_back(ma * mb, ca * cb);
  return from_terms(std::move(out));
}

LambdaElem LambdaElem::scaled(const ParamRatio& c) const {
  if (c.is_zero()) return {};
  LambdaElem e = *this;
  for (auto& t : e.terms_) t.second *= c;
  return e;
}

std::string LambdaElem::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += coeff_text(c);
    if (!m.is_one()) out += "*" + m.to_string();
  }
  return out;
}

// ---------------------------------------------------------------- LambdaXElem

LambdaXElem LambdaXElem::x_power(int a, bool laurent) { return term(a, PMonomial{}, ParamRatio(1), laurent); }

LambdaXElem LambdaXElem::p(int index, bool laurent) { return term(0, PMonomial::p(index), ParamRatio(1), laurent); }

LambdaXElem LambdaXElem::term(int xexp, const PMonomial& m, const ParamRatio& c, bool laurent) {
  Terms t;
  t.emplace_back(XPKey{xexp, m}, c);
  return from_terms(std::move(t), laurent);
}

LambdaXElem LambdaXElem::from_lambda(const LambdaElem& f, bool laurent) {
  LambdaXElem e(laurent);
  e.terms_.reserve(f.terms().size());
  for (const auto& [m, c] : f.terms()) e.terms_.emplace_back(XPKey{0, m}, c);
  return e;
}

LambdaXElem LambdaXElem::from_terms(Terms t, bool laurent) {
  canonicalize(t);
  if (!laurent)
    for (const auto& [key, c] : t)
      if (key.xexp < 0) throw std::invalid_argument("negative power of x in a polynomial element");
  LambdaXElem e(laurent);
  e.terms_ = std::move(t);
  return e;
}

bool LambdaXElem::is_x_free() const {
  for (const auto& [key, c] : terms_)
    if (key.xexp != 0) return false;
  return true;
}

LambdaElem LambdaXElem::as_lambda() const {
  LambdaElem::Terms t;
  t.reserve(terms_.size());
  for (const auto& [key, c] : terms_) {
    if (key.xexp != 0) throw std::logic_error("as_lambda on an element involving x");
    t.emplace_back(key.mono, c);
  }
  return LambdaElem::from_terms(std::move(t));
}

LambdaXElem LambdaXElem::operator-() const {
  LambdaXElem e = *this;
  for (auto& t : e.terms_) t.second = -t.second;
  return e;
}

LambdaXElem LambdaXElem::operator+(const LambdaXElem& o) const {
  LambdaXElem e(laurent_ || o.laurent_);
  e.terms_ = merge_terms(terms_, o.terms_, false);
  return e;
}

LambdaXElem LambdaXElem::operator-(const LambdaXElem& o) const {
  LambdaXElem e(laurent_ || o.laurent_);
  e.terms_ = merge_terms(terms_, o.terms_, true);
  return e;
}

LambdaXElem LambdaXElem::operator*(const LambdaXElem& o) const {
  if (laurent_ != o.laurent_) throw std::invalid_argument("multiplying polynomial and Laurent elements");
  Terms out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) out.emplace_back(XPKey{ka.xexp + kb.xexp, ka.mono * kb.mono}, ca * cb);
  return from_terms(std::move(out), laurent_);
}

LambdaXElem LambdaXElem::scaled(const ParamRatio& c) const {
  if (c.is_zero()) return LambdaXElem(laurent_);
  LambdaXElem e = *this;
  for (auto& t : e.terms_) t.second *= c;
  return e;
}

LambdaXElem LambdaXElem::shifted(int xshift) const {
  LambdaXElem e = *this;
  for (auto& t : e.terms_) {
    t.first.xexp += xshift;
    if (!laurent_ && t.first.xexp < 0) throw std::invalid_argument("negative power of x in a polynomial element");
  }
  return e;
}

std::string LambdaXElem::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += coeff_text(c);
    if (key.xexp == 1) {
      out += "*x";
    } else if (key.xexp != 0) {
      out += "*x^" + std::to_string(key.xexp);
    }
    if (!key.mono.is_one()) out += "*" + key.mono.to_string();
  }
  return out;
}

bool family_is_laurent(Family f) { return f == Family::TrigBC; }

// ---------------------------------------------------------------- family rules

namespace {

// One term of a rule: coefficient * x^xexp * p_pindex (pindex < 0: no p).
struct RuleTerm {
  int xexp;
  int pindex;
  long coeff;
};

// d(p_l) as a sum of x powers.
std::vector<RuleTerm> partial_of_p(int l, Family f) {
  switch (f) {
    case Family::RatA: return {{l - 1, -1, l}};
    case Family::TrigA: return {{l, -1, l}};
    case Family::RatB: return {{2 * l - 1, -1, 2L * l}};
    case Family::TrigBC: return {{l, -1, l}, {-l, -1, -l}};
  }
  return {};
}

std::vector<RuleTerm> delta_of_x_power(int a, Family f) {
  std::vector<RuleTerm> out;
  if (a == 0) return out;
  switch (f) {
    case Family::RatA: {
      for (int j = 0; j <= a - 1; ++j) out.push_back({a - 1 - j, j, 1});
      out.push_back({a - 1, -1, -a});
      break;
    }
    case Family::TrigA: {
      out.push_back({a, 0, 1});
      for (int j = 1; j <= a - 1; ++j) out.push_back({a - j, j, 2});
      out.push_back({0, a, 1});
      out.push_back({a, -1, -2L * a});
      break;
    }
    case Family::RatB: {
      if (a % 2 == 0) {
        int l = a / 2;
        for (int j = 0; j <= l - 1; ++j) out.push_back({2 * (l - j) - 1, j, 1});
        out.push_back({2 * l - 1, -1, -l});
      } else {
        int l = (a + 1) / 2;
        for (int j = 0; j <= l - 1; ++j) out.push_back({2 * (l - 1 - j), j, 1});
        out.push_back({2 * l - 2, -1, -l});
      }
      break;
    }
    case Family::TrigBC: {
      int l = a > 0 ? a : -a;
      int sg = a > 0 ? 1 : -1;
      // (p_0 - 2l - 1) x^{+-l}
      out.push_back({sg * l, 0, sg});
      out.push_back({sg * l, -1, -sg * (2L * l + 1)});
      for (int j = 1; j <= l - 1; ++j) out.push_back({l - 2 * j, -1, -2L * sg});
      out.push_back({-sg * l, -1, -sg});
      for (int j = 1; j <= l - 1; ++j) out.push_back({sg * (l - j), j, 2L * sg});
      out.push_back({0, l, sg});
      break;
    }
  }
  return out;
}

void push_rule(LambdaXElem::Terms& out, const std::vector<RuleTerm>& rule, int xshift, const PMonomial& m,
               const ParamRatio& c) {
  for (const auto& rt : rule) {
    PMonomial mm = rt.pindex >= 0 ? m * PMonomial::p(rt.pindex) : m;
    out.emplace_back(XPKey{rt.xexp + xshift, mm}, c * ParamRatio(rt.coeff));
  }
}

}  // namespace

LambdaXElem partial(const LambdaXElem& f, Family family) {
  const bool euler = is_trig(family);
  LambdaXElem::Terms out;
  for (const auto& [key, c] : f.terms()) {
    const int a = key.xexp;
    if (a != 0) {
      // Euler-type families: d(x) = x; rational families: d(x) = 1.
      out.emplace_back(XPKey{euler ? a : a - 1, key.mono}, c * ParamRatio(a));
    }
    for (int i = 1; i <= key.mono.max_index(); ++i) {
      unsigned e = key.mono.exp(i);
      if (e == 0) continue;
      push_rule(out, partial_of_p(i, family), a, key.mono.without_one(i), c * ParamRatio(static_cast<long>(e)));
    }
  }
  return LambdaXElem::from_terms(std::move(out), f.laurent());
}

LambdaXElem delta(const LambdaXElem& f, Family family) {
  LambdaXElem::Terms out;
  for (const auto& [key, c] : f.terms()) push_rule(out, delta_of_x_power(key.xexp, family), 0, key.mono, c);
  return LambdaXElem::from_terms(std::move(out), f.laurent());
}

LambdaXElem reflect(const LambdaXElem& f, Family family) {
  LambdaXElem::Terms out;
  out.reserve(f.terms().size());
  switch (family) {
    case Family::RatB:
      for (const auto& [key, c] : f.terms()) out.emplace_back(key, key.xexp % 2 == 0 ? c : -c);
      break;
    case Family::TrigBC:
      for (const auto& [key, c] : f.terms()) out.emplace_back(XPKey{-key.xexp, key.mono}, c);
      break;
    default:
      throw UnsupportedFamily(std::string("no reflection at infinity for family ") + family_name(family));
  }
  return LambdaXElem::from_terms(std::move(out), f.laurent());
}

LambdaElem project_E(const LambdaXElem& f, Family family) {
  LambdaElem::Terms out;
  out.reserve(f.terms().size());
  for (const auto& [key, c] : f.terms()) {
    int a = key.xexp;
    int index = -1;
    switch (family) {
      case Family::RatA:
      case Family::TrigA: index = a; break;
      case Family::RatB: index = (a % 2 == 0) ? a / 2 : -1; break;
      case Family::TrigBC: index = a < 0 ? -a : a; break;
    }
    if (index < 0) continue;
    out.emplace_back(key.mono * PMonomial::p(index), c);
  }
  return LambdaElem::from_terms(std::move(out));
}

LambdaXElem mul_x_poly(const LambdaXElem& f, const std::vector<std::pair<int, long>>& poly) {
  LambdaXElem::Terms out;
  out.reserve(f.terms().size() * poly.size());
  for (const auto& [key, c] : f.terms())
    for (const auto& [e, pc] : poly) out.emplace_back(XPKey{key.xexp + e, key.mono}, c * ParamRatio(pc));
  return LambdaXElem::from_terms(std::move(out), f.laurent());
}

LambdaXElem div_x_poly(const LambdaXElem& f, const std::vector<std::pair<int, long>>& poly) {
  int deg = 0;
  std::map<int, long> d;
  for (const auto& [e, c] : poly) {
    d[e] += c;
    deg = std::max(deg, e);
  }
  if (d.begin()->first < 0 || d[deg] != 1 || d[0] == 0)
    throw std::invalid_argument("div_x_poly needs a monic divisor with nonzero constant term");

  // Group by p-monomial; each group is a Laurent polynomial in x.
  std::map<PMonomial, std::map<int, ParamRatio>> groups;
  for (const auto& [key, c] : f.terms()) groups[key.mono][key.xexp] = c;

  LambdaXElem::Terms out;
  for (auto& [mono, coeffs] : groups) {
    int lo = coeffs.begin()->first;
    int hi = coeffs.rbegin()->first;
    std::vector<ParamRatio> rem(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [e, c] : coeffs) rem[static_cast<std::size_t>(e - lo)] = c;
    for (int top = hi - lo; top >= deg; --top) {
      ParamRatio lead = rem[static_cast<std::size_t>(top)];
      if (lead.is_zero()) continue;
      int qexp = top - deg;
      out.emplace_back(XPKey{qexp + lo, mono}, lead);
      for (const auto& [e, dc] : d)
        if (dc != 0) rem[static_cast<std::size_t>(qexp + e)] -= lead * ParamRatio(dc);
    }
    for (int i = 0; i < deg && i < static_cast<int>(rem.size()); ++i)
      if (!rem[static_cast<std::size_t>(i)].is_zero())
        throw InexactDivision("division by a polynomial in x left a remainder");
  }
  return LambdaXElem::from_terms(std::move(out), f.laurent());
}

std::vector<PMonomial> monomial_basis(int deg, int pwindow, int p0_max) {
  std::vector<PMonomial> base{PMonomial{}};
  // Extend by one index at a time.
  for (int i = 1; i <= pwindow && i <= deg; ++i) {
    std::vector<PMonomial> next;
    for (const auto& m : base)
      for (int e = 0; m.degree() + e * i <= deg; ++e) next.push_back(e == 0 ? m : m * PMonomial::p(i, e));
    base = std::move(next);
  }
  std::vector<PMonomial> out;
  for (const auto& m : base)
    for (int j = 0; j <= p0_max; ++j) out.push_back(j == 0 ? m : m * PMonomial::p(0, j));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cms
