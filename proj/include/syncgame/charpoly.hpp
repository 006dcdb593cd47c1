#pragma once

#include <vector>

#include "syncgame/bigint.hpp"
#include "syncgame/graph.hpp"
#include "syncgame/rational.hpp"

namespace syncgame {

// Monic characteristic polynomial of the adjacency matrix, exact integer
// coefficients, coeffs[k] multiplying x^k (so coeffs.size() == n+1).
struct CharPoly {
  std::vector<BigInt> coeffs;

  std::size_t degree() const { return coeffs.size() - 1; }
  friend bool operator==(const CharPoly& a, const CharPoly& b) { return a.coeffs == b.coeffs; }
  friend bool operator!=(const CharPoly& a, const CharPoly& b) { return !(a == b); }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      if (coeffs[k].is_zero()) continue;
      if (!s.empty()) s += coeffs[k].sign() < 0 ? " - " : " + ";
      else if (coeffs[k].sign() < 0) s += "-";
      BigInt a = coeffs[k].abs();
      if (!(a == BigInt(1)) || k == 0) s += a.to_string();
      if (k >= 1) s += "x";
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
  }

  // Exact evaluation at an integer point (Horner).
  BigInt eval(const BigInt& x) const {
    BigInt acc(0);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
  }
};

// Faddeev-LeVerrier over big integers: all divisions are exact.
inline CharPoly char_poly(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<BigInt> m(n * n, BigInt(0));  // running matrix M_k
  CharPoly p;
  p.coeffs.assign(n + 1, BigInt(0));
  p.coeffs[n] = BigInt(1);
  // M_1 = A, c_{n-1} = -tr(M_1); M_{k+1} = A (M_k + c_{n-k} I)
  std::vector<BigInt> mk(n * n, BigInt(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mk[i * n + j] = BigInt(g.adjacent(i, j) ? 1 : 0);
  for (std::size_t k = 1; k <= n; ++k) {
    BigInt tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += mk[i * n + i];
    p.coeffs[n - k] = -(tr / BigInt(static_cast<std::int64_t>(k)));
    if (k == n) break;
    // mk <- A * (mk + c I)
    for (std::size_t i = 0; i < n; ++i) mk[i * n + i] += p.coeffs[n - k];
    std::vector<BigInt> next(n * n, BigInt(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (!g.adjacent(i, l)) continue;
        for (std::size_t j = 0; j < n; ++j) next[i * n + j] += mk[l * n + j];
      }
    mk = std::move(next);
  }
  return p;
}

inline bool is_isospectral(const Graph& a, const Graph& b) {
  if (a.n() != b.n()) return false;
  return char_poly(a) == char_poly(b);
}

namespace detail {

// Univariate polynomial over Q, dense, coeffs[k] on x^k.
using QPoly = std::vector<Rational>;

inline void qp_trim(QPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline QPoly qp_derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t k = 1; k < p.size(); ++k)
    d.push_back(Rational(static_cast<std::int64_t>(k)) * p[k]);
  qp_trim(d);
  return d;
}

// Remainder of a by b, b nonzero; divisor made monic first to keep
// coefficient growth in check.
inline QPoly qp_rem(QPoly a, QPoly b) {
  qp_trim(a);
  qp_trim(b);
  Rational lead = b.back();
  for (auto& c : b) c /= lead;
  while (a.size() >= b.size()) {
    Rational f = a.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    qp_trim(a);
    if (a.empty()) break;
  }
  return a;
}

inline QPoly qp_gcd(QPoly a, QPoly b) {
  qp_trim(a);
  qp_trim(b);
  while (!b.empty()) {
    QPoly r = qp_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

}  // namespace detail

// Exact square-freeness of the characteristic polynomial: deg gcd(p, p') = 0.
inline bool spectrum_is_simple(const Graph& g) {
  CharPoly cp = char_poly(g);
  detail::QPoly p;
  for (const auto& c : cp.coeffs) p.push_back(Rational(c, BigInt(1)));
  detail::QPoly gcd = detail::qp_gcd(p, detail::qp_derivative(p));
  return gcd.size() == 1;
}

}  // namespace syncgame
