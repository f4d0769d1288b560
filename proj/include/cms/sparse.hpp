#pragma once

#include <algorithm>
#include <utility>
#include <vector>

namespace cms {

// Sparse sums are stored as key-sorted vectors of (key, coefficient) pairs
// with unique keys and no zero coefficients. These helpers maintain that
// invariant for any key with operator< / operator== and any coefficient with
// operator+=, operator-=, unary minus and is_zero().

template <class Key, class Coeff>
using TermVec = std::vector<std::pair<Key, Coeff>>;

template <class Key, class Coeff>
void canonicalize(TermVec<Key, Coeff>& terms) {
  if (terms.empty()) return;
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Coeff acc = std::move(terms[i].second);
    while (j < terms.size() && terms[j].first == terms[i].first) {
      acc += terms[j].second;
      ++j;
    }
    if (!acc.is_zero()) {
      if (out != i) terms[out].first = std::move(terms[i].first);
      terms[out].second = std::move(acc);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

// a + sign*b for canonical inputs; output canonical.
template <class Key, class Coeff>
TermVec<Key, Coeff> merge_terms(const TermVec<Key, Coeff>& a, const TermVec<Key, Coeff>& b,
                                bool subtract) {
  TermVec<Key, Coeff> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, subtract ? -b[j].second : b[j].second);
      ++j;
    } else {
      Coeff c = a[i].second;
      if (subtract) {
        c -= b[j].second;
      } else {
        c += b[j].second;
      }
      if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace cms
