#include "cms/finite_cms.hpp"

#include <map>
#include <string>

#include "cms/error.hpp"

namespace cms {

namespace {

using Kind = GroupAction::Kind;

MultiPoly div_by_x(const MultiPoly& f, int i) { return f.divide_linear(i, 0); }

// (x_i + x_j) * f as a polynomial product.
MultiPoly times_sum(const MultiPoly& f, int i, int j) { return f.times_mono(Mono::var(i)) + f.times_mono(Mono::var(j)); }

MultiPoly euler_or_partial(Family family, const MultiPoly& f, int i) {
  return is_trig(family) ? f.euler(i) : f.derivative(i);
}

}  // namespace

ParamRatio k_power(const Params& params, int e) { return params.k.pow(e); }

ParamRatio deformed_weight(const Params& params, const Parity& parity, int i) {
  return parity.of(i) == 0 ? ParamRatio(1) : params.k.inverse();
}

MultiPoly finite_dunkl(Family family, const Params& params, int i, const MultiPoly& f) {
  const int N = f.nvars();
  if (i < 0 || i >= N) throw std::out_of_range("Dunkl operator index out of range");
  const ParamRatio& k = params.k;
  switch (family) {
    case Family::RatA: {
      MultiPoly sum(N);
      for (int j = 0; j < N; ++j) {
        if (j == i) continue;
        sum += (f - f.act({Kind::Swap, i, j})).divide_linear(i, 1, j, 1);
      }
      return f.derivative(i) - sum.scaled(k);
    }
    case Family::TrigA: {
      MultiPoly sum(N);
      for (int j = 0; j < N; ++j) {
        if (j == i) continue;
        sum += times_sum((f - f.act({Kind::Swap, i, j})).divide_linear(i, 1, j, 1), i, j);
      }
      return f.euler(i) - sum.scaled(k / 2);
    }
    case Family::RatB: {
      MultiPoly sum(N);
      for (int j = 0; j < N; ++j) {
        if (j == i) continue;
        sum += (f - f.act({Kind::Swap, i, j})).divide_linear(i, 1, j, 1);
        sum += (f - f.act({Kind::SignedSwap, i, j})).divide_linear(i, -1, j, 1);
      }
      MultiPoly refl = div_by_x(f - f.act({Kind::SignFlip, i}), i);
      return f.derivative(i) - sum.scaled(k) - refl.scaled(params.q);
    }
    case Family::TrigBC: {
      MultiPoly sum(N);
      const MultiPoly one = MultiPoly::constant(N, ParamRatio(1));
      for (int j = 0; j < N; ++j) {
        if (j == i) continue;
        sum += times_sum((f - f.act({Kind::Swap, i, j})).divide_linear(i, 1, j, 1), i, j);
        // (x_i x_j + 1)/(x_i x_j - 1) = (x_i x_j + 1) x_j^{-1} / (x_i - x_j^{-1})
        MultiPoly g = (f - f.act({Kind::InvertingSwap, i, j})).divide_linear(i, 1, j, -1);
        sum += g.times_mono(Mono::var(i)) + g.times_mono(Mono::var(j, -1));
      }
      MultiPoly g = f - f.act({Kind::Inversion, i});
      MultiPoly by_xm1 = g.divide_linear(i, 1);
      MultiPoly p_part = by_xm1.times_mono(Mono::var(i)) + by_xm1;
      MultiPoly by_sq = by_xm1.divide_linear(i, -1);
      MultiPoly q_part = by_sq.times_mono(Mono::var(i, 2)) + by_sq;
      return f.euler(i) - sum.scaled(k / 2) - p_part.scaled(params.p / 2) - q_part.scaled(params.q);
    }
  }
  throw UnsupportedFamily("unknown family");
}

bool is_invariant(Family family, const MultiPoly& f) {
  const int N = f.nvars();
  for (int i = 0; i + 1 < N; ++i)
    if (!(f.act({Kind::Swap, i, i + 1}) == f)) return false;
  if (N > 0 && family == Family::RatB && !(f.act({Kind::SignFlip, 0}) == f)) return false;
  if (N > 0 && family == Family::TrigBC && !(f.act({Kind::Inversion, 0}) == f)) return false;
  return true;
}

MultiPoly heckman_integral(Family family, const Params& params, int r, const MultiPoly& f) {
  if (r < 1) throw std::invalid_argument("integral order must be positive");
  if (!is_invariant(family, f)) throw NotInvariant("input is not invariant under the Weyl group");
  const int power = is_type_b(family) ? 2 * r : r;
  MultiPoly total(f.nvars());
  for (int i = 0; i < f.nvars(); ++i) {
    MultiPoly g = f;
    for (int t = 0; t < power; ++t) g = finite_dunkl(family, params, i, g);
    total += g;
  }
  if (!is_invariant(family, total)) throw NotInvariant("Heckman integral left the invariants");
  return total;
}

std::vector<MultiPoly> deformed_partials(const Params& params, const Parity& parity, int r, const MultiPoly& f) {
  if (r < 1) throw std::invalid_argument("recursion depth must be positive");
  const int N = parity.size();
  if (f.nvars() != N) throw std::invalid_argument("polynomial has the wrong number of variables");
  std::vector<MultiPoly> g(N, MultiPoly(N));
  for (int i = 0; i < N; ++i) g[i] = f.derivative(i).scaled(k_power(params, parity.of(i)));
  for (int level = 2; level <= r; ++level) {
    std::vector<MultiPoly> next(N, MultiPoly(N));
    for (int i = 0; i < N; ++i) {
      MultiPoly acc = g[i].derivative(i).scaled(k_power(params, parity.of(i)));
      for (int j = 0; j < N; ++j) {
        if (j == i) continue;
        acc -= (g[i] - g[j]).divide_linear(i, 1, j, 1).scaled(k_power(params, 1 - parity.of(j)));
      }
      next[i] = std::move(acc);
    }
    g = std::move(next);
  }
  return g;
}

MultiPoly deformed_partial_r(const Params& params, const Parity& parity, int i, int r, const MultiPoly& f) {
  return deformed_partials(params, parity, r, f).at(static_cast<std::size_t>(i));
}

MultiPoly deformed_integral(const Params& params, const Parity& parity, int r, const MultiPoly& f) {
  auto g = deformed_partials(params, parity, r, f);
  MultiPoly total(parity.size());
  for (int i = 0; i < parity.size(); ++i) total += g[i].scaled(deformed_weight(params, parity, i));
  return total;
}

// ---------------------------------------------------------------- Hom

MultiPoly Hom::image_of_p(int l) const {
  const int N = parity.size();
  MultiPoly out(N);
  for (int j = 0; j < N; ++j) {
    ParamRatio w = deformed_weight(params, parity, j);
    switch (family) {
      case Family::RatA:
      case Family::TrigA: out += MultiPoly::monomial(N, Mono::var(j, l), w); break;
      case Family::RatB: out += MultiPoly::monomial(N, Mono::var(j, 2 * l), w); break;
      case Family::TrigBC:
        out += MultiPoly::monomial(N, Mono::var(j, l), w) + MultiPoly::monomial(N, Mono::var(j, -l), w);
        break;
    }
  }
  return out;
}

MultiPoly Hom::apply(const LambdaElem& f) const { return apply(LambdaXElem::from_lambda(f, family_is_laurent(family))); }

MultiPoly Hom::apply(const LambdaXElem& f) const {
  const int N = parity.size();
  std::map<std::pair<int, unsigned>, MultiPoly> powers;
  auto power_of = [&](int l, unsigned e) -> const MultiPoly& {
    auto key = std::make_pair(l, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    MultiPoly v = e == 1 ? image_of_p(l) : image_of_p(l).pow(static_cast<int>(e));
    return powers.emplace(key, std::move(v)).first->second;
  };
  MultiPoly out(N);
  for (const auto& [key, c] : f.terms()) {
    if (key.xexp != 0 && point < 0) throw std::invalid_argument("homomorphism without a point applied to x");
    MultiPoly term = MultiPoly::monomial(N, key.xexp != 0 ? Mono::var(point, key.xexp) : Mono(), c);
    for (int l = 0; l <= key.mono.max_index(); ++l) {
      unsigned e = key.mono.exp(l);
      if (e != 0) term = term * power_of(l, e);
    }
    out += term;
  }
  return out;
}

Hom phi(Family family, const Params& params, int N) { return Hom{family, Parity::undeformed(N), -1, params}; }

Hom phi_at(Family family, const Params& params, int N, int i) {
  return Hom{family, Parity::undeformed(N), i, params};
}

Hom phi_deformed(Family family, const Params& params, const Parity& parity, int i) {
  return Hom{family, parity, i, params};
}

MultiPoly deformed_dunkl_relation(Family family, const Params& params, const Parity& parity, int i,
                                  const LambdaXElem& f) {
  if (family == Family::TrigBC) throw UnsupportedFamily("no deformed Dunkl relation for trig-bc");
  const int N = parity.size();
  std::vector<MultiPoly> F;
  F.reserve(N);
  for (int j = 0; j < N; ++j) F.push_back(phi_deformed(family, params, parity, j).apply(f));

  const ParamRatio kp = k_power(params, parity.of(i));
  MultiPoly out = euler_or_partial(family, F[i], i).scaled(kp);
  for (int j = 0; j < N; ++j) {
    if (j == i) continue;
    const ParamRatio w = k_power(params, 1 - parity.of(j));
    MultiPoly dd = (F[i] - F[j]).divide_linear(i, 1, j, 1);
    if (family == Family::TrigA) {
      out -= times_sum(dd, i, j).scaled(w / 2);
    } else {
      out -= dd.scaled(w);
    }
    if (family == Family::RatB) out -= (F[i] - F[j].act({Kind::SignFlip, j})).divide_linear(i, -1, j, 1).scaled(w);
  }
  if (family == Family::RatB) {
    const ParamRatio& mult = parity.of(i) == 0 ? params.q : params.s;
    out -= div_by_x(F[i] - F[i].act({Kind::SignFlip, i}), i).scaled(kp * mult);
  }
  return out;
}

}  // namespace cms
