#pragma once

// Brute-force reference implementations used only as test oracles. These
// must stay independent of the library code paths they check.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "syncgame/bigint.hpp"
#include "syncgame/graph.hpp"

namespace oracle {

// Isomorphism by trying all n! permutations; n <= 8 or bust.
inline std::optional<std::vector<std::size_t>> brute_force_isomorphism(const syncgame::Graph& g,
                                                                       const syncgame::Graph& h) {
  if (g.n() != h.n()) return std::nullopt;
  std::vector<std::size_t> perm(g.n());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t v = 0; v < g.n() && ok; ++v)
      for (std::size_t w = v + 1; w < g.n() && ok; ++w)
        if (g.adjacent(v, w) != h.adjacent(perm[v], perm[w])) ok = false;
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

inline std::size_t brute_force_automorphism_count(const syncgame::Graph& g) {
  std::vector<std::size_t> perm(g.n());
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (std::size_t v = 0; v < g.n() && ok; ++v)
      for (std::size_t w = v + 1; w < g.n() && ok; ++w)
        if (g.adjacent(v, w) != g.adjacent(perm[v], perm[w])) ok = false;
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// det(t I - A) by cofactor expansion over exact integers, n <= 7.
inline syncgame::BigInt char_poly_det_at(const syncgame::Graph& g, std::int64_t t) {
  const std::size_t n = g.n();
  std::vector<syncgame::BigInt> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i * n + j] = syncgame::BigInt((i == j ? t : 0) - (g.adjacent(i, j) ? 1 : 0));
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), 0);
  // recursive expansion along the first row
  std::function<syncgame::BigInt(std::size_t, std::vector<std::size_t>)> det =
      [&](std::size_t row, std::vector<std::size_t> cs) -> syncgame::BigInt {
    if (cs.empty()) return syncgame::BigInt(1);
    syncgame::BigInt acc(0);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const syncgame::BigInt& entry = m[row * n + cs[k]];
      if (entry.is_zero()) continue;
      std::vector<std::size_t> rest;
      for (std::size_t j = 0; j < cs.size(); ++j)
        if (j != k) rest.push_back(cs[j]);
      syncgame::BigInt sub = det(row + 1, std::move(rest));
      acc += (k % 2 == 0 ? entry : -entry) * sub;
    }
    return acc;
  };
  return det(0, cols);
}

inline syncgame::Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  syncgame::Graph g(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = v + 1; w < n; ++w)
      if (coin(rng)) g.add_edge(v, w);
  return g;
}

// k-regular graph on n vertices: start from a circulant, then randomize by
// degree-preserving double edge swaps.
inline std::optional<syncgame::Graph> random_regular(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n <= k || (n * k) % 2 != 0) return std::nullopt;
  syncgame::Graph g(n);
  for (std::size_t j = 1; j <= k / 2; ++j)
    for (std::size_t v = 0; v < n; ++v)
      if (!g.adjacent(v, (v + j) % n)) g.add_edge(v, (v + j) % n);
  if (k % 2 == 1)
    for (std::size_t v = 0; v < n / 2; ++v)
      if (!g.adjacent(v, v + n / 2)) g.add_edge(v, v + n / 2);
  auto deg_ok = [&]() {
    for (std::size_t v = 0; v < n; ++v)
      if (g.degree(v) != k) return false;
    return true;
  };
  if (!deg_ok()) return std::nullopt;  // circulant base failed (small n corner)

  std::mt19937_64 rng(seed);
  auto rebuild = [&](std::vector<std::pair<int, int>>& edges) {
    syncgame::Graph h(n);
    for (auto [u, v] : edges) h.add_edge(u, v);
    return h;
  };
  auto edges = g.edges();
  for (int step = 0; step < 300; ++step) {
    std::size_t i = rng() % edges.size(), j = rng() % edges.size();
    if (i == j) continue;
    auto [a, b] = edges[i];
    auto [c, d] = edges[j];
    if (a == c || a == d || b == c || b == d) continue;
    if (g.adjacent(a, c) || g.adjacent(b, d)) continue;
    edges[i] = {a, c};
    edges[j] = {b, d};
    g = rebuild(edges);
  }
  return g;
}

}  // namespace oracle
