#include "cms/multipoly.hpp"

#include <map>
#include <stdexcept>

#include "cms/error.hpp"
#include "cms/lambda_bar.hpp"

namespace cms {

// ---------------------------------------------------------------- Mono

Mono Mono::var(int i, int e) { return Mono().with_exp(i, e); }

Mono Mono::from_exps(const std::vector<int>& e) {
  if (e.size() > static_cast<std::size_t>(kMaxVars)) throw std::out_of_range("too many variables");
  Mono m;
  for (std::size_t i = 0; i < e.size(); ++i) m = m.with_exp(static_cast<int>(i), e[i]);
  return m;
}

Mono Mono::with_exp(int i, int e) const {
  if (i < 0 || i >= kMaxVars) throw std::out_of_range("variable index out of range");
  if (e < -127 || e > 127) throw std::overflow_error("exponent out of range");
  Mono m = *this;
  m.key_ &= ~(std::uint64_t{0xff} << shift(i));
  m.key_ |= static_cast<std::uint64_t>(e + 128) << shift(i);
  return m;
}

Mono Mono::operator*(const Mono& o) const {
  Mono m;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = exp(i) + o.exp(i);
    if (e != 0) m = m.with_exp(i, e);
  }
  return m;
}

Mono Mono::inverse() const {
  Mono m;
  for (int i = 0; i < kMaxVars; ++i)
    if (exp(i) != 0) m = m.with_exp(i, -exp(i));
  return m;
}

int Mono::total_degree(int nvars) const {
  int d = 0;
  for (int i = 0; i < nvars; ++i) d += exp(i);
  return d;
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly MultiPoly::var(int nvars, int i) { return monomial(nvars, Mono::var(i)); }

MultiPoly MultiPoly::constant(int nvars, const ParamRatio& c) { return monomial(nvars, Mono(), c); }

MultiPoly MultiPoly::monomial(int nvars, const Mono& m, const ParamRatio& c) {
  MultiPoly p(nvars);
  if (!c.is_zero()) p.terms_.emplace_back(m, c);
  return p;
}

MultiPoly MultiPoly::from_terms(int nvars, Terms t) {
  canonicalize(t);
  MultiPoly p(nvars);
  p.terms_ = std::move(t);
  return p;
}

ParamRatio MultiPoly::constant_term() const {
  for (const auto& [m, c] : terms_)
    if (m.is_one()) return c;
  return ParamRatio(0);
}

bool MultiPoly::is_polynomial() const {
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < nvars_; ++i)
      if (m.exp(i) < 0) return false;
  return true;
}

int MultiPoly::min_exp(int i) const {
  int e = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    e = first ? m.exp(i) : std::min(e, m.exp(i));
    first = false;
  }
  return e;
}

int MultiPoly::max_exp(int i) const {
  int e = 0;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    e = first ? m.exp(i) : std::max(e, m.exp(i));
    first = false;
  }
  return e;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly p(std::max(nvars_, o.nvars_));
  p.terms_ = merge_terms(terms_, o.terms_, false);
  return p;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly p(std::max(nvars_, o.nvars_));
  p.terms_ = merge_terms(terms_, o.terms_, true);
  return p;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  Terms out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) out.emplace_back(ma * mb, ca * cb);
  return from_terms(std::max(nvars_, o.nvars_), std::move(out));
}

MultiPoly MultiPoly::scaled(const ParamRatio& c) const {
  if (c.is_zero()) return MultiPoly(nvars_);
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.second *= c;
  return p;
}

MultiPoly MultiPoly::times_mono(const Mono& m, const ParamRatio& c) const {
  if (c.is_zero()) return MultiPoly(nvars_);
  Terms out;
  out.reserve(terms_.size());
  for (const auto& [mm, cc] : terms_) out.emplace_back(mm * m, cc * c);
  // Multiplying by a monomial is injective on exponents, so sorting suffices.
  return from_terms(nvars_, std::move(out));
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power of a polynomial");
  MultiPoly acc = constant(nvars_, ParamRatio(1));
  for (int i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

MultiPoly MultiPoly::derivative(int i) const {
  Terms out;
  for (const auto& [m, c] : terms_) {
    int e = m.exp(i);
    if (e != 0) out.emplace_back(m.with_exp(i, e - 1), c * ParamRatio(e));
  }
  return from_terms(nvars_, std::move(out));
}

MultiPoly MultiPoly::euler(int i) const {
  Terms out;
  for (const auto& [m, c] : terms_) {
    int e = m.exp(i);
    if (e != 0) out.emplace_back(m, c * ParamRatio(e));
  }
  return from_terms(nvars_, std::move(out));
}

MultiPoly MultiPoly::act(const GroupAction& g) const {
  Terms out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    int ei = m.exp(g.i);
    int ej = g.j >= 0 ? m.exp(g.j) : 0;
    Mono mm = m;
    ParamRatio cc = c;
    switch (g.kind) {
      case GroupAction::Kind::Swap: mm = m.with_exp(g.i, ej).with_exp(g.j, ei); break;
      case GroupAction::Kind::SignedSwap:
        mm = m.with_exp(g.i, ej).with_exp(g.j, ei);
        if ((ei + ej) % 2 != 0) cc = -cc;
        break;
      case GroupAction::Kind::SignFlip:
        if (ei % 2 != 0) cc = -cc;
        break;
      case GroupAction::Kind::Inversion: mm = m.with_exp(g.i, -ei); break;
      case GroupAction::Kind::InvertingSwap: mm = m.with_exp(g.i, -ej).with_exp(g.j, -ei); break;
    }
    out.emplace_back(mm, cc);
  }
  return from_terms(nvars_, std::move(out));
}

MultiPoly MultiPoly::divide_linear(int i, long c, int j, int e) const {
  auto q = try_divide_linear(i, c, j, e);
  if (!q) throw InexactDivision("divided difference in x_" + std::to_string(i + 1) + " left a remainder");
  return *std::move(q);
}

std::optional<MultiPoly> MultiPoly::try_divide_linear(int i, long c, int j, int e) const {
  if (terms_.empty()) return *this;
  if (c == 0) {
    // Division by x_i itself; exact only if every term carries x_i.
    Terms out;
    out.reserve(terms_.size());
    for (const auto& [m, cc] : terms_) {
      if (m.exp(i) <= 0) return std::nullopt;
      out.emplace_back(m.with_exp(i, m.exp(i) - 1), cc);
    }
    return from_terms(nvars_, std::move(out));
  }
  // Coefficients of powers of x_i, as polynomials in the other variables.
  std::map<int, Terms> by_power;
  for (const auto& [m, cc] : terms_) by_power[m.exp(i)].emplace_back(m.with_exp(i, 0), cc);
  const int lo = by_power.begin()->first;
  const int hi = by_power.rbegin()->first;
  const Mono gmono = j >= 0 ? Mono::var(j, e) : Mono();
  const ParamRatio gc(c);

  auto coeff_at = [&](int power) {
    auto it = by_power.find(power);
    return it == by_power.end() ? MultiPoly(nvars_) : from_terms(nvars_, it->second);
  };

  // Synthetic division of x_i^{-lo} F by (x_i - g).
  Terms out;
  MultiPoly carry(nvars_);
  for (int d = hi - lo; d >= 1; --d) {
    MultiPoly q = coeff_at(lo + d) + carry.times_mono(gmono, gc);
    for (const auto& [m, cc] : q.terms()) out.emplace_back(m.with_exp(i, lo + d - 1), cc);
    carry = std::move(q);
  }
  MultiPoly rem = coeff_at(lo) + carry.times_mono(gmono, gc);
  if (!rem.is_zero()) return std::nullopt;
  return from_terms(nvars_, std::move(out));
}

MultiPoly MultiPoly::substitute(const std::map<Symbol, ParamRatio>& bindings) const {
  Terms out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.emplace_back(m, cms::substitute(c, bindings));
  return from_terms(nvars_, std::move(out));
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += coeff_text(c);
    for (int i = 0; i < nvars_; ++i) {
      int e = m.exp(i);
      if (e == 0) continue;
      out += "*x" + std::to_string(i + 1);
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

}  // namespace cms
