#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "syncgame/bigint.hpp"
#include "syncgame/graph.hpp"

namespace syncgame {

namespace detail {

constexpr std::size_t kIsoSizeCap = 64;

// Joint color refinement on a pair of graphs. Mapped/forced pairs are
// individualized: the pair (v in g, w in h) shares a fresh color. Returns
// false when the color class sizes cannot support a bijection.
struct Refiner {
  const Graph& g;
  const Graph& h;

  // Initial invariant: (degree, #edges among neighbours). Cheap and enough
  // to shatter the regular cospectral pairs we care about.
  static std::vector<long long> base_invariant(const Graph& x) {
    std::vector<long long> inv(x.n());
    for (std::size_t v = 0; v < x.n(); ++v) {
      long long tri = 0;
      std::vector<std::size_t> nb;
      for (std::size_t w = 0; w < x.n(); ++w)
        if (x.adjacent(v, w)) nb.push_back(w);
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (x.adjacent(nb[i], nb[j])) ++tri;
      inv[v] = static_cast<long long>(nb.size()) * 100000 + tri;
    }
    return inv;
  }

  // colors_g/colors_h get the stable refined coloring; returns false on a
  // class-size mismatch between the two graphs.
  bool refine(const std::vector<int>& pinned_g, const std::vector<int>& pinned_h,
              std::vector<int>& colors_g, std::vector<int>& colors_h) const {
    auto inv_g = base_invariant(g);
    auto inv_h = base_invariant(h);
    std::map<long long, int> palette;
    auto assign = [&](const std::vector<long long>& inv, std::vector<int>& out) {
      out.resize(inv.size());
      for (std::size_t v = 0; v < inv.size(); ++v) {
        auto it = palette.emplace(inv[v], static_cast<int>(palette.size())).first;
        out[v] = it->second;
      }
    };
    assign(inv_g, colors_g);
    assign(inv_h, colors_h);
    int next = static_cast<int>(palette.size());
    // individualize pinned pairs: pinned_g[v] == pinned_h[w] == pair id >= 0
    for (std::size_t v = 0; v < colors_g.size(); ++v)
      if (pinned_g[v] >= 0) colors_g[v] = next + pinned_g[v];
    for (std::size_t w = 0; w < colors_h.size(); ++w)
      if (pinned_h[w] >= 0) colors_h[w] = next + pinned_h[w];

    while (true) {
      using Sig = std::pair<int, std::vector<int>>;
      std::map<Sig, int> sigs;
      auto signature = [&](const Graph& x, const std::vector<int>& colors, std::size_t v) {
        std::vector<int> nb;
        for (std::size_t w = 0; w < x.n(); ++w)
          if (x.adjacent(v, w)) nb.push_back(colors[w]);
        std::sort(nb.begin(), nb.end());
        return Sig{colors[v], std::move(nb)};
      };
      std::vector<int> ng(g.n()), nh(h.n());
      for (std::size_t v = 0; v < g.n(); ++v) {
        auto it = sigs.emplace(signature(g, colors_g, v), static_cast<int>(sigs.size())).first;
        ng[v] = it->second;
      }
      for (std::size_t w = 0; w < h.n(); ++w) {
        auto it = sigs.emplace(signature(h, colors_h, w), static_cast<int>(sigs.size())).first;
        nh[w] = it->second;
      }
      bool stable = ng == colors_g && nh == colors_h;
      // renumbering may differ even when the partition is stable
      std::vector<int> count_g(sigs.size(), 0), count_h(sigs.size(), 0);
      for (auto c : ng) ++count_g[c];
      for (auto c : nh) ++count_h[c];
      if (count_g != count_h) return false;
      std::size_t old_classes = std::max(*std::max_element(colors_g.begin(), colors_g.end()),
                                         colors_h.empty() ? 0 : *std::max_element(colors_h.begin(), colors_h.end())) + 1;
      colors_g = std::move(ng);
      colors_h = std::move(nh);
      if (stable || sigs.size() == old_classes) break;
    }
    return true;
  }
};

struct IsoSearch {
  const Graph& g;
  const Graph& h;
  std::vector<int> gmap, hmap;  // partial bijection, -1 = unset

  IsoSearch(const Graph& g_, const Graph& h_) : g(g_), h(h_), gmap(g_.n(), -1), hmap(h_.n(), -1) {}

  bool consistent(std::size_t v, std::size_t w) const {
    for (std::size_t u = 0; u < g.n(); ++u)
      if (gmap[u] >= 0 && g.adjacent(v, u) != h.adjacent(w, static_cast<std::size_t>(gmap[u])))
        return false;
    return true;
  }

  bool solve() {
    std::vector<int> pin_g(g.n(), -1), pin_h(h.n(), -1);
    int pair_id = 0;
    for (std::size_t v = 0; v < g.n(); ++v)
      if (gmap[v] >= 0) {
        pin_g[v] = pair_id;
        pin_h[gmap[v]] = pair_id;
        ++pair_id;
      }
    std::vector<int> cg, ch;
    Refiner ref{g, h};
    if (!ref.refine(pin_g, pin_h, cg, ch)) return false;

    // pick an unmapped g-vertex from the smallest color class
    std::map<int, std::vector<std::size_t>> cells_g, cells_h;
    for (std::size_t v = 0; v < g.n(); ++v)
      if (gmap[v] < 0) cells_g[cg[v]].push_back(v);
    for (std::size_t w = 0; w < h.n(); ++w)
      if (hmap[w] < 0) cells_h[ch[w]].push_back(w);
    if (cells_g.empty()) return true;
    auto best = cells_g.begin();
    for (auto it = cells_g.begin(); it != cells_g.end(); ++it)
      if (it->second.size() < best->second.size()) best = it;
    std::size_t v = best->second.front();
    auto hit = cells_h.find(best->first);
    if (hit == cells_h.end()) return false;
    for (std::size_t w : hit->second) {
      if (!consistent(v, w)) continue;
      gmap[v] = static_cast<int>(w);
      hmap[w] = static_cast<int>(v);
      if (solve()) return true;
      gmap[v] = -1;
      hmap[w] = -1;
    }
    return false;
  }
};

inline std::optional<std::vector<std::size_t>> find_isomorphism(
    const Graph& g, const Graph& h, const std::vector<std::pair<std::size_t, std::size_t>>& forced) {
  if (g.n() != h.n()) return std::nullopt;
  if (g.edge_count() != h.edge_count()) return std::nullopt;
  IsoSearch s(g, h);
  for (auto [v, w] : forced) {
    if (!s.consistent(v, w)) return std::nullopt;
    s.gmap[v] = static_cast<int>(w);
    s.hmap[w] = static_cast<int>(v);
  }
  if (!s.solve()) return std::nullopt;
  std::vector<std::size_t> perm(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) perm[v] = static_cast<std::size_t>(s.gmap[v]);
  return perm;
}

}  // namespace detail

// Exact isomorphism by backtracking with iterated color refinement.
// The returned permutation pi satisfies adj_g(v,w) == adj_h(pi v, pi w).
inline std::optional<std::vector<std::size_t>> is_isomorphic(const Graph& g, const Graph& h) {
  if (g.n() > detail::kIsoSizeCap || h.n() > detail::kIsoSizeCap)
    throw std::invalid_argument("is_isomorphic: graphs larger than 64 vertices are not supported");
  return detail::find_isomorphism(g, h, {});
}

// |Aut(g)| via the stabilizer chain: the order is the product of orbit
// sizes of successively fixed vertices; each orbit membership test is one
// backtracking search.
inline BigInt automorphism_order(const Graph& g) {
  if (g.n() > detail::kIsoSizeCap)
    throw std::invalid_argument("automorphism_order: graphs larger than 64 vertices are not supported");
  std::vector<std::pair<std::size_t, std::size_t>> fixed;
  BigInt order(1);
  while (true) {
    std::vector<int> pin(g.n(), -1);
    int pid = 0;
    for (auto [v, w] : fixed) {
      (void)w;
      pin[v] = pid++;
    }
    std::vector<int> cg, ch;
    detail::Refiner ref{g, g};
    ref.refine(pin, pin, cg, ch);
    std::map<int, std::vector<std::size_t>> cells;
    for (std::size_t v = 0; v < g.n(); ++v) cells[cg[v]].push_back(v);
    // first non-singleton cell, smallest color id
    std::size_t target = g.n();
    for (auto& [c, vs] : cells)
      if (vs.size() >= 2) {
        target = vs.front();
        break;
      }
    if (target == g.n()) break;  // discrete partition: only the identity remains
    std::size_t orbit = 0;
    for (std::size_t w = 0; w < g.n(); ++w) {
      if (cg[w] != cg[target]) continue;
      if (w == target) {
        ++orbit;
        continue;
      }
      auto trial = fixed;
      trial.emplace_back(target, w);
      if (detail::find_isomorphism(g, g, trial)) ++orbit;
    }
    order *= BigInt(static_cast<std::int64_t>(orbit));
    fixed.emplace_back(target, target);
  }
  return order;
}

}  // namespace syncgame
