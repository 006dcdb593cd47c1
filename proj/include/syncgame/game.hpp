#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "syncgame/graph.hpp"
#include "syncgame/matrix.hpp"

namespace syncgame {

// Synchronous game with a dense predicate table. Construction enforces the
// synchronicity law lambda(v,v,a,b) = 0 for a != b; diagonal cells
// lambda(v,v,a,a) may be 0, which marks output a as dead for input v.
class SyncGame {
 public:
  SyncGame(std::vector<std::string> inputs, std::vector<std::string> outputs,
           const std::function<bool(std::size_t, std::size_t, std::size_t, std::size_t)>& rule)
      : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
    const std::size_t ni = inputs_.size(), no = outputs_.size();
    if (ni == 0 || no == 0) throw std::invalid_argument("SyncGame: empty input or output set");
    if (ni * ni * no * no > 10000000)
      throw std::invalid_argument("SyncGame: predicate table above the 1e7 cell cap");
    lambda_.assign(ni * ni * no * no, 0);
    for (std::size_t v = 0; v < ni; ++v)
      for (std::size_t w = 0; w < ni; ++w)
        for (std::size_t a = 0; a < no; ++a)
          for (std::size_t b = 0; b < no; ++b) {
            bool win = rule(v, w, a, b);
            if (v == w && a != b && win)
              throw std::invalid_argument("SyncGame: predicate violates synchronicity");
            lambda_[idx(v, w, a, b)] = win ? 1 : 0;
          }
  }

  std::size_t num_inputs() const { return inputs_.size(); }
  std::size_t num_outputs() const { return outputs_.size(); }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }

  bool lambda(std::size_t v, std::size_t w, std::size_t a, std::size_t b) const {
    return lambda_[idx(v, w, a, b)] != 0;
  }
  // output a is usable for input v at all
  bool output_alive(std::size_t v, std::size_t a) const { return lambda(v, v, a, a); }

  bool is_synchronous() const {
    for (std::size_t v = 0; v < num_inputs(); ++v)
      for (std::size_t a = 0; a < num_outputs(); ++a)
        for (std::size_t b = 0; b < num_outputs(); ++b)
          if (a != b && lambda(v, v, a, b)) return false;
    return true;
  }

  std::vector<std::array<std::size_t, 4>> zero_cells() const {
    std::vector<std::array<std::size_t, 4>> zs;
    for (std::size_t v = 0; v < num_inputs(); ++v)
      for (std::size_t w = 0; w < num_inputs(); ++w)
        for (std::size_t a = 0; a < num_outputs(); ++a)
          for (std::size_t b = 0; b < num_outputs(); ++b)
            if (!lambda(v, w, a, b)) zs.push_back({v, w, a, b});
    return zs;
  }

 private:
  std::vector<std::string> inputs_, outputs_;
  std::vector<std::uint8_t> lambda_;
  std::size_t idx(std::size_t v, std::size_t w, std::size_t a, std::size_t b) const {
    return ((v * inputs_.size() + w) * outputs_.size() + a) * outputs_.size() + b;
  }
};

// Hom(X, Y): inputs V(X), outputs V(Y); edges must map to edges and equal
// inputs to equal outputs.
inline SyncGame hom_game(const Graph& x, const Graph& y) {
  std::vector<std::string> ins, outs;
  for (std::size_t v = 0; v < x.n(); ++v) ins.push_back("x" + std::to_string(v));
  for (std::size_t h = 0; h < y.n(); ++h) outs.push_back("y" + std::to_string(h));
  return SyncGame(ins, outs, [&](std::size_t v, std::size_t w, std::size_t a, std::size_t b) {
    if (v == w && a != b) return false;
    if (x.adjacent(v, w) && !y.adjacent(a, b)) return false;
    return true;
  });
}

// Iso(X, Y): inputs and outputs are V(X) disjoint-union V(Y); outputs come
// from the opposite graph, the Seidel relation is preserved on same-graph
// input pairs, and cross pairs are forced to be mutually inverse.
inline SyncGame iso_game(const Graph& x, const Graph& y) {
  const std::size_t nx = x.n(), ny = y.n();
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < nx; ++v) labels.push_back("x" + std::to_string(v));
  for (std::size_t h = 0; h < ny; ++h) labels.push_back("y" + std::to_string(h));
  auto in_x = [nx](std::size_t i) { return i < nx; };
  auto relv = [&](std::size_t i, std::size_t j) {
    // both i, j must lie in the same graph
    if (in_x(i)) return rel(x, i, j);
    return rel(y, i - nx, j - nx);
  };
  return SyncGame(labels, labels, [&](std::size_t v, std::size_t w, std::size_t a, std::size_t b) {
    if (in_x(v) == in_x(a) || in_x(w) == in_x(b)) return false;  // outputs in the opposite graph
    if (in_x(v) == in_x(w)) {
      if (relv(v, w) != relv(a, b)) return false;
    } else {
      if (a == w && b != v) return false;
      if (b == v && a != w) return false;
    }
    return true;
  });
}

class SearchBudgetExceeded : public std::runtime_error {
 public:
  SearchBudgetExceeded() : std::runtime_error("deterministic search: node budget exceeded") {}
};

// Exhaustive search for a single winning answer function h (synchronous
// games only need one). Returns the lexicographically least h, std::nullopt
// when none exists; throws SearchBudgetExceeded past 1e8 nodes.
inline std::optional<std::vector<std::size_t>> perfect_deterministic_search(
    const SyncGame& g, std::uint64_t node_budget = 100000000ull) {
  const std::size_t ni = g.num_inputs(), no = g.num_outputs();
  std::vector<std::size_t> h(ni, no);
  // domains as bitsets over outputs
  std::vector<std::vector<std::uint8_t>> domain(ni, std::vector<std::uint8_t>(no, 1));
  for (std::size_t v = 0; v < ni; ++v)
    for (std::size_t a = 0; a < no; ++a)
      if (!g.output_alive(v, a)) domain[v][a] = 0;

  std::uint64_t nodes = 0;
  std::function<bool(std::size_t)> dfs = [&](std::size_t v) -> bool {
    if (v == ni) return true;
    for (std::size_t a = 0; a < no; ++a) {
      if (!domain[v][a]) continue;
      if (++nodes > node_budget) throw SearchBudgetExceeded();
      bool feasible = true;
      for (std::size_t w = 0; w < v && feasible; ++w)
        if (!g.lambda(v, w, a, h[w]) || !g.lambda(w, v, h[w], a)) feasible = false;
      if (!feasible) continue;
      // forward check future domains
      std::vector<std::pair<std::size_t, std::size_t>> pruned;
      bool wiped = false;
      for (std::size_t w = v + 1; w < ni && !wiped; ++w) {
        bool any = false;
        for (std::size_t b = 0; b < no; ++b) {
          if (!domain[w][b]) continue;
          if (!g.lambda(v, w, a, b) || !g.lambda(w, v, b, a)) {
            domain[w][b] = 0;
            pruned.emplace_back(w, b);
          } else {
            any = true;
          }
        }
        if (!any) wiped = true;
      }
      if (!wiped) {
        h[v] = a;
        if (dfs(v + 1)) return true;
        h[v] = no;
      }
      for (auto [w, b] : pruned) domain[w][b] = 1;
    }
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  return h;
}

// Conditional probability density p(a,b|v,w), dense.
class CondProb {
 public:
  CondProb(std::size_t ni, std::size_t no) : ni_(ni), no_(no), p_(ni * ni * no * no, 0.0) {}

  static CondProb point_mass(const SyncGame& g, const std::vector<std::size_t>& h) {
    CondProb p(g.num_inputs(), g.num_outputs());
    for (std::size_t v = 0; v < g.num_inputs(); ++v)
      for (std::size_t w = 0; w < g.num_inputs(); ++w) p.at(h[v], h[w], v, w) = 1.0;
    return p;
  }

  std::size_t num_inputs() const { return ni_; }
  std::size_t num_outputs() const { return no_; }
  double& at(std::size_t a, std::size_t b, std::size_t v, std::size_t w) {
    return p_[((v * ni_ + w) * no_ + a) * no_ + b];
  }
  double at(std::size_t a, std::size_t b, std::size_t v, std::size_t w) const {
    return p_[((v * ni_ + w) * no_ + a) * no_ + b];
  }

  // entries nonnegative, rows summing to one
  bool valid(double tol = 1e-9) const {
    for (std::size_t v = 0; v < ni_; ++v)
      for (std::size_t w = 0; w < ni_; ++w) {
        double s = 0;
        for (std::size_t a = 0; a < no_; ++a)
          for (std::size_t b = 0; b < no_; ++b) {
            double x = at(a, b, v, w);
            if (x < -tol) return false;
            s += x;
          }
        if (std::abs(s - 1.0) > tol) return false;
      }
    return true;
  }

 private:
  std::size_t ni_, no_;
  std::vector<double> p_;
};

inline bool is_perfect_strategy(const CondProb& p, const SyncGame& g, double tol = 1e-9) {
  if (p.num_inputs() != g.num_inputs() || p.num_outputs() != g.num_outputs())
    throw std::invalid_argument("is_perfect_strategy: shape mismatch");
  for (std::size_t v = 0; v < g.num_inputs(); ++v)
    for (std::size_t w = 0; w < g.num_inputs(); ++w)
      for (std::size_t a = 0; a < g.num_outputs(); ++a)
        for (std::size_t b = 0; b < g.num_outputs(); ++b)
          if (!g.lambda(v, w, a, b) && p.at(a, b, v, w) > tol) return false;
  return true;
}

// Finite-dimensional certificate: a projection E_{v,a} for every input/output
// pair, rows summing to the identity.
struct QuantumWitness {
  std::size_t d = 0;
  std::size_t ni = 0, no = 0;
  std::vector<CMat> E;  // (v*no + a) -> d x d projection

  const CMat& at(std::size_t v, std::size_t a) const { return E[v * no + a]; }
  CMat& at(std::size_t v, std::size_t a) { return E[v * no + a]; }

  static QuantumWitness zeros(std::size_t d, std::size_t ni, std::size_t no) {
    QuantumWitness w;
    w.d = d;
    w.ni = ni;
    w.no = no;
    w.E.assign(ni * no, CMat(d, d));
    return w;
  }

  // max residual over projection and row-sum identities
  double invariant_residual() const {
    double worst = 0;
    for (std::size_t v = 0; v < ni; ++v) {
      CMat sum(d, d);
      for (std::size_t a = 0; a < no; ++a) {
        const CMat& e = at(v, a);
        worst = std::max(worst, (e * e - e).frobenius_norm());
        worst = std::max(worst, (e.conj_transpose() - e).frobenius_norm());
        sum = sum + e;
      }
      worst = std::max(worst, (sum - CMat::identity(d)).frobenius_norm());
    }
    return worst;
  }
};

// p(a,b|v,w) = tau(E_{v,a} E_{w,b}) with tau the normalized matrix trace.
inline CondProb strategy_from_witness(const QuantumWitness& w, const SyncGame& g, double tol = 1e-10) {
  if (w.ni != g.num_inputs() || w.no != g.num_outputs())
    throw std::invalid_argument("strategy_from_witness: witness is indexed by a different game");
  if (w.invariant_residual() > tol)
    throw std::invalid_argument("strategy_from_witness: witness violates projection/row-sum invariants");
  CondProb p(w.ni, w.no);
  for (std::size_t v = 0; v < w.ni; ++v)
    for (std::size_t ww = 0; ww < w.ni; ++ww)
      for (std::size_t a = 0; a < w.no; ++a)
        for (std::size_t b = 0; b < w.no; ++b) {
          Complex tr = 0;
          const CMat& ea = w.at(v, a);
          const CMat& eb = w.at(ww, b);
          for (std::size_t i = 0; i < w.d; ++i)
            for (std::size_t k = 0; k < w.d; ++k) tr += ea(i, k) * eb(k, i);
          p.at(a, b, v, ww) = tr.real() / static_cast<double>(w.d);
        }
  return p;
}

// Report for the magic-unitary check of an isomorphism witness: U = (E_{g,h})
// must be a quantum permutation intertwining the adjacency matrices.
struct MagicUnitaryReport {
  bool pass = false;
  double projection_residual = 0;   // E^2 = E = E*
  double row_sum_residual = 0;      // sum_h E_{g,h} = 1
  double col_sum_residual = 0;      // sum_g E_{g,h} = 1
  double row_orth_residual = 0;     // E_{g,h} E_{g,h'} = 0
  double col_orth_residual = 0;     // E_{g,h} E_{g',h} = 0
  double intertwine_residual = 0;   // (1 (x) A_X) U = U (1 (x) A_Y)
  double tolerance = 0;

  double max_residual() const {
    double r = projection_residual;
    r = std::max(r, row_sum_residual);
    r = std::max(r, col_sum_residual);
    r = std::max(r, row_orth_residual);
    r = std::max(r, col_orth_residual);
    r = std::max(r, intertwine_residual);
    return r;
  }
};

// Witness indexed by V(x) x V(y). Passing certifies a C*-quantum isomorphism.
inline MagicUnitaryReport verify_magic_unitary_witness(const QuantumWitness& w, const Graph& x,
                                                       const Graph& y, double tol = 1e-10) {
  if (w.ni != x.n() || w.no != y.n())
    throw std::invalid_argument("verify_magic_unitary_witness: index mismatch with the graphs");
  MagicUnitaryReport rep;
  rep.tolerance = tol;
  const std::size_t n = x.n(), d = w.d;
  for (std::size_t g = 0; g < n; ++g) {
    CMat row_sum(d, d);
    for (std::size_t h = 0; h < n; ++h) {
      const CMat& e = w.at(g, h);
      rep.projection_residual = std::max(rep.projection_residual, (e * e - e).frobenius_norm());
      rep.projection_residual =
          std::max(rep.projection_residual, (e.conj_transpose() - e).frobenius_norm());
      row_sum = row_sum + e;
      for (std::size_t h2 = h + 1; h2 < n; ++h2)
        rep.row_orth_residual =
            std::max(rep.row_orth_residual, (w.at(g, h) * w.at(g, h2)).frobenius_norm());
    }
    rep.row_sum_residual = std::max(rep.row_sum_residual, (row_sum - CMat::identity(d)).frobenius_norm());
  }
  for (std::size_t h = 0; h < n; ++h) {
    CMat col_sum(d, d);
    for (std::size_t g = 0; g < n; ++g) {
      col_sum = col_sum + w.at(g, h);
      for (std::size_t g2 = g + 1; g2 < n; ++g2)
        rep.col_orth_residual =
            std::max(rep.col_orth_residual, (w.at(g, h) * w.at(g2, h)).frobenius_norm());
    }
    rep.col_sum_residual = std::max(rep.col_sum_residual, (col_sum - CMat::identity(d)).frobenius_norm());
  }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      CMat lhs(d, d), rhs(d, d);
      for (std::size_t k = 0; k < n; ++k) {
        if (x.adjacent(g, k)) lhs = lhs + w.at(k, h);
        if (y.adjacent(k, h)) rhs = rhs + w.at(g, k);
      }
      rep.intertwine_residual = std::max(rep.intertwine_residual, (lhs - rhs).frobenius_norm());
    }
  rep.pass = rep.max_residual() <= tol;
  return rep;
}

}  // namespace syncgame
