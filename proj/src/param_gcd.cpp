// Multivariate gcd over Q[k,p,q,r,s] by recursive primitive pseudo-remainder
// sequences. Degrees in this domain are small (deformation parameters rarely
// exceed degree ~10), so the classical algorithm is adequate.

#include <algorithm>

#include "cms/coeffs.hpp"

namespace cms {

namespace {

// Coefficients indexed by degree in the main variable.
using UPoly = std::vector<ParamPoly>;

UPoly to_upoly(const ParamPoly& a, Symbol v) {
  UPoly out(a.degree_in(v) + 1);
  std::vector<std::vector<ParamPoly::Term>> buckets(out.size());
  for (const auto& [e, c] : a.terms()) {
    unsigned d = e.exp(v);
    ParamExp rest = ParamExp::of(v, d).quotient_of(e);
    buckets[d].emplace_back(rest, c);
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ParamPoly::from_terms(std::move(buckets[i]));
  return out;
}

ParamPoly from_upoly(const UPoly& u, Symbol v) {
  ParamPoly out;
  for (std::size_t d = 0; d < u.size(); ++d) {
    if (u[d].is_zero()) continue;
    out += u[d].times_monomial(ParamExp::of(v, static_cast<unsigned>(d)), BigRat(1));
  }
  return out;
}

void trim(UPoly& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

ParamPoly content(const UPoly& u) {
  ParamPoly g;
  for (const auto& c : u) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

UPoly divide_coeffs(const UPoly& u, const ParamPoly& c) {
  UPoly out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = *u[i].divide_exact(c);
  return out;
}

// Scales u so that all rational coefficients become coprime integers.
void clear_rational_content(UPoly& u) {
  BigInt l = 1;
  BigInt g = 0;
  for (const auto& c : u)
    for (const auto& t : c.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.get_den_mpz_t());
  for (const auto& c : u)
    for (const auto& t : c.terms()) {
      BigInt v = t.second.get_num() * (l / t.second.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
  if (g == 0) return;
  BigRat scale(l, g);
  if (scale == 1) return;
  for (auto& c : u) c = c.scaled(scale);
}

UPoly primitive_part(const UPoly& u) {
  ParamPoly c = content(u);
  UPoly out = (c.is_zero() || c.is_one()) ? u : divide_coeffs(u, c);
  clear_rational_content(out);
  return out;
}

// lc(b)^j * a - Q*b with deg < deg b; j chosen by the elimination loop.
UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  const std::size_t db = b.size() - 1;
  const ParamPoly& lb = b.back();
  trim(a);
  while (!a.empty() && a.size() - 1 >= db) {
    ParamPoly la = a.back();
    std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

ParamPoly monomial_gcd(const ParamPoly& mono, const ParamPoly& other) {
  ParamExp g = mono.leading().first;
  for (const auto& t : other.terms()) g = g.min(t.first);
  return ParamPoly::monomial(g, BigRat(1));
}

}  // namespace

ParamPoly gcd(const ParamPoly& a, const ParamPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return ParamPoly(1);
  if (a.is_monomial()) return monomial_gcd(a, b);
  if (b.is_monomial()) return monomial_gcd(b, a);

  Symbol v = Symbol::k;
  bool found = false;
  for (int i = kNumSymbols - 1; i >= 0 && !found; --i) {
    auto s = static_cast<Symbol>(i);
    if (a.involves(s) || b.involves(s)) {
      v = s;
      found = true;
    }
  }
  if (!a.involves(v)) return gcd(a, content(to_upoly(b, v)));
  if (!b.involves(v)) return gcd(content(to_upoly(a, v)), b);

  UPoly ua = to_upoly(a, v);
  UPoly ub = to_upoly(b, v);
  ParamPoly ca = content(ua);
  ParamPoly cb = content(ub);
  ParamPoly c = gcd(ca, cb);
  ua = divide_coeffs(ua, ca);
  ub = divide_coeffs(ub, cb);
  clear_rational_content(ua);
  clear_rational_content(ub);
  if (ua.size() < ub.size()) std::swap(ua, ub);

  UPoly g;
  for (;;) {
    UPoly r = pseudo_remainder(ua, ub);
    if (r.empty()) {
      g = primitive_part(ub);
      break;
    }
    if (r.size() == 1) {
      g = UPoly{ParamPoly(1)};
      break;
    }
    ua = std::move(ub);
    ub = primitive_part(r);
  }
  return (c * from_upoly(g, v)).monic();
}

}  // namespace cms
