#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace syncgame {

// Finite simple graph: symmetric 0/1 adjacency with zero diagonal,
// vertices 0..n-1. Equality is labeled matrix equality, never isomorphism.
class Graph {
 public:
  explicit Graph(std::size_t n) : n_(n), adj_(n * n, 0) {
    if (n == 0) throw std::invalid_argument("Graph: need at least one vertex");
  }

  static Graph from_edges(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  std::size_t n() const { return n_; }
  bool adjacent(std::size_t v, std::size_t w) const {
    check(v);
    check(w);
    return adj_[v * n_ + w] != 0;
  }
  void add_edge(std::size_t v, std::size_t w) {
    check(v);
    check(w);
    if (v == w) throw std::invalid_argument("Graph: self-loop rejected");
    adj_[v * n_ + w] = adj_[w * n_ + v] = 1;
  }

  std::size_t degree(std::size_t v) const {
    check(v);
    std::size_t d = 0;
    for (std::size_t w = 0; w < n_; ++w) d += adj_[v * n_ + w];
    return d;
  }
  std::vector<std::size_t> degree_sequence() const {
    std::vector<std::size_t> d(n_);
    for (std::size_t v = 0; v < n_; ++v) d[v] = degree(v);
    return d;
  }
  bool is_regular() const {
    auto d = degree_sequence();
    return std::adjacent_find(d.begin(), d.end(), std::not_equal_to<>()) == d.end();
  }
  std::size_t edge_count() const {
    std::size_t m = 0;
    for (auto b : adj_) m += b;
    return m / 2;
  }
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    for (std::size_t v = 0; v < n_; ++v)
      for (std::size_t w = v + 1; w < n_; ++w)
        if (adj_[v * n_ + w]) e.emplace_back(static_cast<int>(v), static_cast<int>(w));
    return e;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }
  friend bool operator!=(const Graph& a, const Graph& b) { return !(a == b); }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> adj_;
  void check(std::size_t v) const {
    if (v >= n_) throw std::out_of_range("Graph: vertex index out of range");
  }
};

// Seidel relation: 0 on the diagonal, -1 on edges, +1 on non-edges.
inline int rel(const Graph& g, std::size_t v, std::size_t w) {
  if (v == w) {
    if (v >= g.n()) throw std::out_of_range("rel: vertex index out of range");
    return 0;
  }
  return g.adjacent(v, w) ? -1 : +1;
}

inline Graph complement(const Graph& g) {
  Graph c(g.n());
  for (std::size_t v = 0; v < g.n(); ++v)
    for (std::size_t w = v + 1; w < g.n(); ++w)
      if (!g.adjacent(v, w)) c.add_edge(v, w);
  return c;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = v + 1; w < n; ++w) g.add_edge(v, w);
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

// 3-regular, 12 vertices, trivial automorphism group. Built from the LCF
// code [-5,-2,-4,2,5,-2,2,5,-2,-5,4,2] on a Hamiltonian 12-cycle.
inline Graph frucht() {
  static const int lcf[12] = {-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2};
  Graph g(12);
  for (int v = 0; v < 12; ++v) {
    g.add_edge(v, (v + 1) % 12);
    int w = ((v + lcf[v]) % 12 + 12) % 12;
    if (!g.adjacent(v, w)) g.add_edge(v, w);
  }
  return g;
}

// Godsil-McKay style switch: given a regular base on 2m vertices and an
// m-subset S, returns the graph with a new vertex joined to S and the graph
// with the new vertex joined to V \ S. The two are always isospectral.
inline std::pair<Graph, Graph> gm_switch(const Graph& base, const std::vector<std::size_t>& subset) {
  if (!base.is_regular()) throw std::invalid_argument("gm_switch: base graph must be regular");
  if (base.n() % 2 != 0) throw std::invalid_argument("gm_switch: base graph must have 2m vertices");
  const std::size_t m = base.n() / 2;
  std::set<std::size_t> s(subset.begin(), subset.end());
  if (s.size() != subset.size()) throw std::invalid_argument("gm_switch: duplicate vertices in subset");
  if (s.size() != m) throw std::invalid_argument("gm_switch: subset must have exactly m vertices");
  for (auto v : s)
    if (v >= base.n()) throw std::out_of_range("gm_switch: subset vertex out of range");

  Graph g1(base.n() + 1), g2(base.n() + 1);
  for (auto [u, v] : base.edges()) {
    g1.add_edge(u, v);
    g2.add_edge(u, v);
  }
  for (std::size_t v = 0; v < base.n(); ++v) {
    if (s.count(v))
      g1.add_edge(base.n(), v);
    else
      g2.add_edge(base.n(), v);
  }
  return {g1, g2};
}

// --- edge-list text format ---------------------------------------------
// First line "n m", then m lines "u v" (0-indexed). Self-loops and
// duplicate edges are parse errors naming the offending line.

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline Graph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("expected header \"n m\"", lineno + 1);
  std::istringstream hdr(line);
  long long n = -1, m = -1;
  if (!(hdr >> n >> m) || n < 1 || m < 0) throw ParseError("bad header, expected \"n m\"", lineno);
  Graph g(static_cast<std::size_t>(n));
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) throw ParseError("expected " + std::to_string(m) + " edges, got " + std::to_string(i), lineno + 1);
    std::istringstream es(line);
    long long u = -1, v = -1;
    if (!(es >> u >> v)) throw ParseError("bad edge line", lineno);
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("vertex index out of range", lineno);
    if (u == v) throw ParseError("self-loop rejected", lineno);
    if (g.adjacent(u, v)) throw ParseError("duplicate edge", lineno);
    g.add_edge(u, v);
  }
  return g;
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

inline std::string to_edge_list(const Graph& g) {
  auto e = g.edges();
  std::ostringstream out;
  out << g.n() << " " << e.size() << "\n";
  for (auto [u, v] : e) out << u << " " << v << "\n";
  return out.str();
}

}  // namespace syncgame
