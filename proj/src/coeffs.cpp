#include "cms/coeffs.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cms/error.hpp"

namespace cms {

const char* symbol_name(Symbol s) {
  switch (s) {
    case Symbol::k: return "k";
    case Symbol::p: return "p";
    case Symbol::q: return "q";
    case Symbol::r: return "r";
    case Symbol::s: return "s";
  }
  return "?";
}

std::optional<Symbol> symbol_from_name(const std::string& name) {
  for (int i = 0; i < kNumSymbols; ++i) {
    auto s = static_cast<Symbol>(i);
    if (name == symbol_name(s)) return s;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- ParamExp

ParamExp ParamExp::from_exps(const std::array<unsigned, kNumSymbols>& e) {
  ParamExp out;
  unsigned deg = 0;
  for (int i = 0; i < kNumSymbols; ++i) {
    if (e[i] > 0xffu) throw std::overflow_error("parameter exponent exceeds 255");
    out.key_ |= static_cast<std::uint64_t>(e[i]) << (8 * i);
    deg += e[i];
  }
  out.key_ |= static_cast<std::uint64_t>(deg) << 40;
  return out;
}

ParamExp ParamExp::of(Symbol s, unsigned e) {
  std::array<unsigned, kNumSymbols> a{};
  a[static_cast<int>(s)] = e;
  return from_exps(a);
}

ParamExp ParamExp::operator*(const ParamExp& o) const {
  std::array<unsigned, kNumSymbols> a{};
  for (int i = 0; i < kNumSymbols; ++i) {
    auto s = static_cast<Symbol>(i);
    a[i] = exp(s) + o.exp(s);
  }
  return from_exps(a);
}

ParamExp ParamExp::min(const ParamExp& o) const {
  std::array<unsigned, kNumSymbols> a{};
  for (int i = 0; i < kNumSymbols; ++i) {
    auto s = static_cast<Symbol>(i);
    a[i] = std::min(exp(s), o.exp(s));
  }
  return from_exps(a);
}

bool ParamExp::divides(const ParamExp& o) const {
  for (int i = 0; i < kNumSymbols; ++i) {
    auto s = static_cast<Symbol>(i);
    if (exp(s) > o.exp(s)) return false;
  }
  return true;
}

ParamExp ParamExp::quotient_of(const ParamExp& o) const {
  std::array<unsigned, kNumSymbols> a{};
  for (int i = 0; i < kNumSymbols; ++i) {
    auto s = static_cast<Symbol>(i);
    a[i] = o.exp(s) - exp(s);
  }
  return from_exps(a);
}

// ---------------------------------------------------------------- ParamPoly

namespace {

void canonicalize_terms(std::vector<ParamPoly::Term>& t) {
  if (t.size() < 2) {
    if (t.size() == 1 && t[0].second == 0) t.clear();
    return;
  }
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i + 1;
    BigRat acc = t[i].second;
    while (j < t.size() && t[j].first == t[i].first) acc += t[j++].second;
    if (acc != 0) {
      t[out].first = t[i].first;
      t[out].second = acc;
      ++out;
    }
    i = j;
  }
  t.resize(out);
}

std::vector<ParamPoly::Term> merge(const std::vector<ParamPoly::Term>& a,
                                   const std::vector<ParamPoly::Term>& b, bool subtract) {
  std::vector<ParamPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, subtract ? BigRat(-b[j].second) : b[j].second);
      ++j;
    } else {
      BigRat c = subtract ? BigRat(a[i].second - b[j].second) : BigRat(a[i].second + b[j].second);
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

ParamPoly::ParamPoly(long c) {
  if (c != 0) terms_.emplace_back(ParamExp{}, BigRat(c));
}

ParamPoly::ParamPoly(const BigRat& c) {
  if (c != 0) terms_.emplace_back(ParamExp{}, c);
}

ParamPoly ParamPoly::symbol(Symbol s) { return monomial(ParamExp::of(s), BigRat(1)); }

ParamPoly ParamPoly::monomial(const ParamExp& e, const BigRat& c) {
  ParamPoly p;
  if (c != 0) p.terms_.emplace_back(e, c);
  return p;
}

ParamPoly ParamPoly::from_terms(std::vector<Term> terms) {
  canonicalize_terms(terms);
  ParamPoly p;
  p.terms_ = std::move(terms);
  return p;
}

BigRat ParamPoly::constant_value() const {
  if (terms_.empty()) return BigRat(0);
  if (!is_constant()) throw std::logic_error("ParamPoly::constant_value on non-constant");
  return terms_[0].second;
}

unsigned ParamPoly::degree_in(Symbol s) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.exp(s));
  return d;
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

ParamPoly ParamPoly::operator+(const ParamPoly& o) const {
  ParamPoly p = *this;
  return p += o;
}

ParamPoly ParamPoly::operator-(const ParamPoly& o) const {
  ParamPoly p = *this;
  return p -= o;
}

ParamPoly ParamPoly::operator*(const ParamPoly& o) const {
  if (terms_.empty() || o.terms_.empty()) return {};
  if (o.is_constant()) return scaled(o.terms_[0].second);
  if (is_constant()) return o.scaled(terms_[0].second);
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) out.emplace_back(ea * eb, ca * cb);
  canonicalize_terms(out);
  ParamPoly p;
  p.terms_ = std::move(out);
  return p;
}

ParamPoly ParamPoly::scaled(const BigRat& c) const {
  if (c == 0) return {};
  ParamPoly p = *this;
  for (auto& t : p.terms_) t.second *= c;
  return p;
}

ParamPoly ParamPoly::times_monomial(const ParamExp& e, const BigRat& c) const {
  if (c == 0) return {};
  ParamPoly p;
  p.terms_.reserve(terms_.size());
  for (const auto& [ea, ca] : terms_) p.terms_.emplace_back(ea * e, ca * c);
  // Multiplying by a monomial preserves graded lex order.
  return p;
}

std::optional<ParamPoly> ParamPoly::divide_exact(const ParamPoly& o) const {
  if (o.is_zero()) throw DivisionByZero("ParamPoly::divide_exact by zero");
  if (is_zero()) return ParamPoly{};
  if (o.is_constant()) return scaled(1 / o.terms_[0].second);
  ParamPoly rem = *this;
  std::vector<Term> quot;
  const auto& [lo_e, lo_c] = o.leading();
  while (!rem.is_zero()) {
    const auto& [lr_e, lr_c] = rem.leading();
    if (!lo_e.divides(lr_e)) return std::nullopt;
    ParamExp qe = lo_e.quotient_of(lr_e);
    BigRat qc = lr_c / lo_c;
    quot.emplace_back(qe, qc);
    rem -= o.times_monomial(qe, qc);
  }
  return from_terms(std::move(quot));
}

ParamPoly ParamPoly::monic() const {
  if (is_zero()) return {};
  return scaled(1 / leading().second);
}

BigRat ParamPoly::eval(const std::map<Symbol, BigRat>& point) const {
  BigRat acc = 0;
  for (const auto& [e, c] : terms_) {
    BigRat t = c;
    for (int i = 0; i < kNumSymbols; ++i) {
      auto s = static_cast<Symbol>(i);
      unsigned d = e.exp(s);
      if (d == 0) continue;
      auto it = point.find(s);
      if (it == point.end())
        throw std::invalid_argument(std::string("no value for parameter ") + symbol_name(s));
      BigRat v = it->second;
      for (unsigned j = 0; j < d; ++j) t *= v;
    }
    acc += t;
  }
  return acc;
}

std::string to_string(const BigRat& r) { return r.get_str(); }

std::string ParamPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    BigRat mag = abs(c);
    bool neg = c < 0;
    if (neg) {
      os << '-';
    } else if (!first) {
      os << '+';
    }
    first = false;
    std::string mono;
    for (int i = 0; i < kNumSymbols; ++i) {
      auto s = static_cast<Symbol>(i);
      unsigned d = e.exp(s);
      if (d == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += symbol_name(s);
      if (d > 1) mono += "^" + std::to_string(d);
    }
    if (mono.empty()) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << mono;
    } else {
      os << mag.get_str() << '*' << mono;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- ParamRatio

ParamRatio::ParamRatio(ParamPoly num, ParamPoly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void ParamRatio::normalize() {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = ParamPoly(1);
    return;
  }
  if (den_.is_constant()) {
    if (!den_.is_one()) {
      num_ = num_.scaled(1 / den_.constant_value());
      den_ = ParamPoly(1);
    }
    return;
  }
  if (den_.is_monomial() || num_.is_monomial()) {
    const ParamPoly& mono = den_.is_monomial() ? den_ : num_;
    const ParamPoly& other = den_.is_monomial() ? num_ : den_;
    ParamExp g = mono.leading().first;
    for (const auto& t : other.terms()) g = g.min(t.first);
    if (!g.is_one()) {
      ParamPoly gp = ParamPoly::monomial(g, BigRat(1));
      num_ = *num_.divide_exact(gp);
      den_ = *den_.divide_exact(gp);
    }
  } else {
    ParamPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  BigRat lc = den_.leading().second;
  if (lc != 1) {
    num_ = num_.scaled(1 / lc);
    den_ = den_.scaled(1 / lc);
  }
}

ParamRatio ParamRatio::operator-() const {
  ParamRatio r = *this;
  r.num_ = -r.num_;
  return r;
}

ParamRatio& ParamRatio::operator+=(const ParamRatio& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    if (num_.is_zero()) den_ = ParamPoly(1);
    return *this;
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    if (num_.is_zero()) den_ = ParamPoly(1);
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

ParamRatio& ParamRatio::operator-=(const ParamRatio& o) { return *this += -o; }

ParamRatio& ParamRatio::operator*=(const ParamRatio& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = ParamRatio();
  if (o.is_constant()) {
    num_ = num_.scaled(o.constant_value());
    return *this;
  }
  if (is_constant()) {
    BigRat c = constant_value();
    *this = o;
    num_ = num_.scaled(c);
    return *this;
  }
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

ParamRatio& ParamRatio::operator/=(const ParamRatio& o) { return *this *= o.inverse(); }

ParamRatio ParamRatio::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of the zero rational function");
  ParamRatio r;
  r.num_ = den_;
  r.den_ = num_;
  BigRat lc = r.den_.leading().second;
  if (lc != 1) {
    r.num_ = r.num_.scaled(1 / lc);
    r.den_ = r.den_.scaled(1 / lc);
  }
  return r;
}

ParamRatio ParamRatio::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  ParamRatio acc(1);
  ParamRatio base = *this;
  while (e > 0) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return acc;
}

std::string ParamRatio::to_string() const {
  if (num_.is_zero()) return "0/1";
  // Integer-coefficient form: scale by the lcm of coefficient denominators,
  // then remove the common integer content.
  BigInt l = 1;
  for (const auto* poly : {&num_, &den_})
    for (const auto& t : poly->terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.get_den_mpz_t());
  BigInt g = 0;
  for (const auto* poly : {&num_, &den_})
    for (const auto& t : poly->terms()) {
      BigInt v = BigInt(t.second.get_num() * (l / t.second.get_den()));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
  if (g == 0) g = 1;
  BigRat scale(l, g);
  ParamPoly n = num_.scaled(scale);
  ParamPoly d = den_.scaled(scale);
  std::string ds = d.to_string();
  if (!d.is_constant()) ds = "(" + ds + ")";
  return "(" + n.to_string() + ")/" + ds;
}

ParamRatio arith(const ParamRatio& a, const ParamRatio& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw std::logic_error("unknown ArithOp");
}

namespace {

ParamRatio substitute_poly(const ParamPoly& p, const std::map<Symbol, ParamRatio>& bindings) {
  ParamRatio acc;
  for (const auto& [e, c] : p.terms()) {
    ParamRatio t(c);
    ParamExp rest;
    for (int i = 0; i < kNumSymbols; ++i) {
      auto s = static_cast<Symbol>(i);
      unsigned d = e.exp(s);
      if (d == 0) continue;
      auto it = bindings.find(s);
      if (it == bindings.end()) {
        rest = rest * ParamExp::of(s, d);
      } else {
        t *= it->second.pow(static_cast<int>(d));
      }
    }
    if (!rest.is_one()) t *= ParamRatio(ParamPoly::monomial(rest, BigRat(1)));
    acc += t;
  }
  return acc;
}

}  // namespace

ParamRatio substitute(const ParamRatio& a, const std::map<Symbol, ParamRatio>& bindings) {
  ParamRatio n = substitute_poly(a.num(), bindings);
  ParamRatio d = substitute_poly(a.den(), bindings);
  if (d.is_zero()) throw DenominatorVanishes("denominator " + a.den().to_string() + " vanishes under substitution");
  return n / d;
}

BigRat eval_at(const ParamRatio& a, const std::map<Symbol, BigRat>& point) {
  BigRat d = a.den().eval(point);
  if (d == 0) throw PoleAtPoint("denominator " + a.den().to_string() + " vanishes at the evaluation point");
  return a.num().eval(point) / d;
}

// ---------------------------------------------------------------- families

const char* family_name(Family f) {
  switch (f) {
    case Family::RatA: return "rat-a";
    case Family::TrigA: return "trig-a";
    case Family::RatB: return "rat-b";
    case Family::TrigBC: return "trig-bc";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
  for (Family f : {Family::RatA, Family::TrigA, Family::RatB, Family::TrigBC})
    if (name == family_name(f)) return f;
  return std::nullopt;
}

Params constrained_params(Family f, const ParamRatio& k, const ParamRatio& p, const ParamRatio& q) {
  Params out;
  out.k = k;
  if (f == Family::RatB || f == Family::TrigBC) {
    out.q = q;
    // 2q + 1 = k(2s + 1)
    out.s = (ParamRatio(2) * q + ParamRatio(1) - k) / (ParamRatio(2) * k);
  }
  if (f == Family::TrigBC) {
    out.p = p;
    // p = k r
    out.r = p / k;
  }
  return out;
}

Params symbolic_params(Family f) {
  return constrained_params(f, ParamRatio::symbol(Symbol::k), ParamRatio::symbol(Symbol::p),
                     ParamRatio::symbol(Symbol::q));
}

BigRat random_rational(std::mt19937_64& rng, long bound, bool allow_negative) {
  std::uniform_int_distribution<long> dist(1, bound);
  BigRat r(dist(rng), dist(rng));
  r.canonicalize();
  if (allow_negative && (rng() & 1u)) r = -r;
  return r;
}

Params sampled_params(Family f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // k stays away from 0 and -1 where the deformed formulas degenerate.
  BigRat k = random_rational(rng, 97, false) + 1;
  BigRat p = random_rational(rng, 97);
  BigRat q = random_rational(rng, 97);
  return constrained_params(f, ParamRatio(k), ParamRatio(p), ParamRatio(q));
}

}  // namespace cms
