#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "syncgame/game.hpp"
#include "syncgame/graph.hpp"
#include "syncgame/matrix.hpp"

namespace syncgame {

// m x n linear system over Z_2. Bit vectors are unsigned integers,
// little-endian by variable index (bit j <-> variable x_j).
struct LinearSystemZ2 {
  std::size_t m = 0, n = 0;
  std::vector<std::uint32_t> rows;  // row i support/coefficients
  std::uint32_t b = 0;              // bit i is the right-hand side of row i

  LinearSystemZ2(std::size_t m_, std::size_t n_, std::vector<std::uint32_t> rows_, std::uint32_t b_)
      : m(m_), n(n_), rows(std::move(rows_)), b(b_) {
    if (m == 0 || n == 0 || n > 20 || m > 32) throw std::invalid_argument("LinearSystemZ2: bad dimensions");
    if (rows.size() != m) throw std::invalid_argument("LinearSystemZ2: row count mismatch");
    for (auto r : rows) {
      if (r == 0) throw std::invalid_argument("LinearSystemZ2: empty row");
      if (r >> n) throw std::invalid_argument("LinearSystemZ2: coefficient outside n variables");
    }
  }

  bool rhs(std::size_t i) const { return (b >> i) & 1; }
  LinearSystemZ2 homogeneous() const { return LinearSystemZ2(m, n, rows, 0); }

  static LinearSystemZ2 parse(const std::string& text) {
    std::istringstream in(text);
    std::size_t m = 0, n = 0;
    if (!(in >> m >> n)) throw std::invalid_argument("system file: expected header \"m n\"");
    std::vector<std::uint32_t> rows;
    for (std::size_t i = 0; i < m; ++i) {
      std::string bits;
      if (!(in >> bits) || bits.size() != n)
        throw std::invalid_argument("system file: row " + std::to_string(i) + " needs " +
                                    std::to_string(n) + " bits");
      std::uint32_t r = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (bits[j] != '0' && bits[j] != '1') throw std::invalid_argument("system file: bad bit");
        if (bits[j] == '1') r |= 1u << j;
      }
      rows.push_back(r);
    }
    std::string bbits;
    if (!(in >> bbits) || bbits.size() != m)
      throw std::invalid_argument("system file: expected " + std::to_string(m) + " bits for b");
    std::uint32_t b = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (bbits[i] != '0' && bbits[i] != '1') throw std::invalid_argument("system file: bad bit in b");
      if (bbits[i] == '1') b |= 1u << i;
    }
    return LinearSystemZ2(m, n, rows, b);
  }

  std::string serialize() const {
    std::ostringstream out;
    out << m << " " << n << "\n";
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) out << (((rows[i] >> j) & 1) ? '1' : '0');
      out << "\n";
    }
    for (std::size_t i = 0; i < m; ++i) out << (rhs(i) ? '1' : '0');
    out << "\n";
    return out.str();
  }
};

inline int parity(std::uint32_t x) { return __builtin_popcount(x) & 1; }

// Per-row local solution set S_i^b: vectors supported on V_i satisfying the
// row parity; always of size 2^(|V_i|-1).
struct SolutionSets {
  std::vector<std::vector<std::size_t>> supports;     // V_i as index lists
  std::vector<std::vector<std::uint32_t>> solutions;  // S_i^b ascending as integers
};

inline SolutionSets solution_sets(const LinearSystemZ2& sys) {
  SolutionSets out;
  for (std::size_t i = 0; i < sys.m; ++i) {
    std::vector<std::size_t> vi;
    for (std::size_t j = 0; j < sys.n; ++j)
      if ((sys.rows[i] >> j) & 1) vi.push_back(j);
    if (vi.size() > 20) throw std::invalid_argument("solution_sets: row support above 20 variables");
    std::vector<std::uint32_t> sols;
    for (std::uint32_t mask = 0; mask < (1u << vi.size()); ++mask) {
      std::uint32_t x = 0;
      for (std::size_t t = 0; t < vi.size(); ++t)
        if ((mask >> t) & 1) x |= 1u << vi[t];
      if (parity(x & sys.rows[i]) == (sys.rhs(i) ? 1 : 0)) sols.push_back(x);
    }
    out.supports.push_back(std::move(vi));
    out.solutions.push_back(std::move(sols));
  }
  return out;
}

inline std::string bit_label(std::uint32_t x, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t j = 0; j < n; ++j)
    if ((x >> j) & 1) s[j] = '1';
  return s;
}

// syncBCS(A, b): inputs are the rows; outputs are the union of the S_i^b
// (other vectors are dead by construction); players win when their local
// solutions agree on shared variables.
inline SyncGame sync_bcs_game(const LinearSystemZ2& sys) {
  SolutionSets ss = solution_sets(sys);
  std::vector<std::uint32_t> outputs;
  for (const auto& sols : ss.solutions)
    for (auto x : sols) outputs.push_back(x);
  std::sort(outputs.begin(), outputs.end());
  outputs.erase(std::unique(outputs.begin(), outputs.end()), outputs.end());

  std::vector<std::string> in_labels, out_labels;
  for (std::size_t i = 0; i < sys.m; ++i) in_labels.push_back("r" + std::to_string(i));
  for (auto x : outputs) out_labels.push_back(bit_label(x, sys.n));

  auto member = [&](std::size_t i, std::uint32_t x) {
    const auto& sols = ss.solutions[i];
    return std::binary_search(sols.begin(), sols.end(), x);
  };
  return SyncGame(in_labels, out_labels, [&](std::size_t i, std::size_t j, std::size_t a, std::size_t bb) {
    std::uint32_t x = outputs[a], y = outputs[bb];
    if (!member(i, x) || !member(j, y)) return false;
    std::uint32_t shared = sys.rows[i] & sys.rows[j];
    return ((x ^ y) & shared) == 0;
  });
}

// Vertex table of G_{A,b}: pairs (row, local solution), rows ascending and
// solutions ascending as integers.
struct BcsVertexTable {
  std::vector<std::pair<std::size_t, std::uint32_t>> verts;

  std::size_t index_of(std::size_t row, std::uint32_t x) const {
    for (std::size_t k = 0; k < verts.size(); ++k)
      if (verts[k].first == row && verts[k].second == x) return k;
    throw std::out_of_range("BcsVertexTable: no such vertex");
  }
};

inline BcsVertexTable bcs_vertex_table(const LinearSystemZ2& sys) {
  SolutionSets ss = solution_sets(sys);
  BcsVertexTable t;
  for (std::size_t i = 0; i < sys.m; ++i)
    for (auto x : ss.solutions[i]) t.verts.emplace_back(i, x);
  return t;
}

// G_{A,b}: one vertex per (row, local solution); edges join inconsistent
// pairs (some shared variable where the solutions disagree).
inline Graph graph_of_system(const LinearSystemZ2& sys) {
  BcsVertexTable t = bcs_vertex_table(sys);
  if (t.verts.size() > 64) throw std::invalid_argument("graph_of_system: above 64 vertices");
  Graph g(t.verts.size());
  for (std::size_t p = 0; p < t.verts.size(); ++p)
    for (std::size_t q = p + 1; q < t.verts.size(); ++q) {
      auto [i, x] = t.verts[p];
      auto [j, y] = t.verts[q];
      std::uint32_t shared = sys.rows[i] & sys.rows[j];
      if ((x ^ y) & shared) g.add_edge(p, q);
    }
  return g;
}

// Gaussian elimination over Z_2. Returns a solution (free variables zero)
// or a certificate: a set of rows whose sum is the contradiction 0 = 1.
struct Z2SolveResult {
  std::optional<std::uint32_t> solution;  // bit j = value of x_j
  std::vector<std::size_t> certificate_rows;
};

inline Z2SolveResult is_classically_solvable(const LinearSystemZ2& sys) {
  // carry row-combination bookkeeping in the high bits
  std::vector<std::uint64_t> aug;  // bits 0..n-1: coefficients, bit n: rhs, bits n+1..: row combo
  for (std::size_t i = 0; i < sys.m; ++i)
    aug.push_back(sys.rows[i] | (static_cast<std::uint64_t>(sys.rhs(i)) << sys.n) |
                  (1ull << (sys.n + 1 + i)));
  std::size_t rank = 0;
  std::vector<int> pivot_col;
  for (std::size_t col = 0; col < sys.n && rank < aug.size(); ++col) {
    std::size_t sel = rank;
    while (sel < aug.size() && !((aug[sel] >> col) & 1)) ++sel;
    if (sel == aug.size()) continue;
    std::swap(aug[rank], aug[sel]);
    for (std::size_t r = 0; r < aug.size(); ++r)
      if (r != rank && ((aug[r] >> col) & 1)) aug[r] ^= aug[rank];
    pivot_col.push_back(static_cast<int>(col));
    ++rank;
  }
  Z2SolveResult res;
  for (std::size_t r = rank; r < aug.size(); ++r) {
    if ((aug[r] >> sys.n) & 1) {  // 0 = 1 row: read off the combination
      for (std::size_t i = 0; i < sys.m; ++i)
        if ((aug[r] >> (sys.n + 1 + i)) & 1) res.certificate_rows.push_back(i);
      return res;
    }
  }
  std::uint32_t x = 0;
  for (std::size_t r = 0; r < rank; ++r)
    if ((aug[r] >> sys.n) & 1) x |= 1u << pivot_col[r];
  res.solution = x;
  return res;
}

// --- the Mermin-Peres magic square ---------------------------------------
// Nine variables on a 3x3 grid (x_{3r+c} at row r, column c); the three row
// constraints have parity 0 and the three column constraints have parities
// 0, 0, 1. The all-rows-plus-columns sum shows the system is unsatisfiable.
inline LinearSystemZ2 magic_square_instance() {
  std::vector<std::uint32_t> rows;
  for (int r = 0; r < 3; ++r) {
    std::uint32_t row = 0;
    for (int c = 0; c < 3; ++c) row |= 1u << (3 * r + c);
    rows.push_back(row);
  }
  for (int c = 0; c < 3; ++c) {
    std::uint32_t col = 0;
    for (int r = 0; r < 3; ++r) col |= 1u << (3 * r + c);
    rows.push_back(col);
  }
  return LinearSystemZ2(6, 9, rows, 0b100000u);
}

namespace detail {

inline CMat kron(const CMat& a, const CMat& b) {
  CMat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

inline CMat pauli(char which) {
  CMat m(2, 2);
  switch (which) {
    case 'I': m(0, 0) = 1; m(1, 1) = 1; break;
    case 'X': m(0, 1) = 1; m(1, 0) = 1; break;
    case 'Y': m(0, 1) = Complex(0, -1); m(1, 0) = Complex(0, 1); break;
    case 'Z': m(0, 0) = 1; m(1, 1) = -1; break;
    default: throw std::logic_error("pauli: unknown label");
  }
  return m;
}

// The standard two-qubit observable grid: rows multiply to +1, columns to
// +1, +1, -1, and the entries of every constraint commute.
inline CMat magic_square_observable(int r, int c) {
  static const char* grid[3][3] = {{"ZI", "IZ", "ZZ"}, {"IX", "XI", "XX"}, {"ZX", "XZ", "YY"}};
  return kron(pauli(grid[r][c][0]), pauli(grid[r][c][1]));
}

}  // namespace detail

// d = 4 projective witness for syncBCS(magic square): E_{i,x} is the joint
// eigenprojection of the three commuting observables of constraint i with
// signs (-1)^{x_j}; outputs outside S_i^b get the zero projection.
inline QuantumWitness magic_square_witness() {
  LinearSystemZ2 sys = magic_square_instance();
  SyncGame game = sync_bcs_game(sys);
  SolutionSets ss = solution_sets(sys);

  // output index lookup by bit label
  auto output_index = [&](std::uint32_t x) {
    const auto& labels = game.outputs();
    std::string lab = bit_label(x, sys.n);
    for (std::size_t a = 0; a < labels.size(); ++a)
      if (labels[a] == lab) return a;
    throw std::logic_error("magic_square_witness: output not in game alphabet");
  };

  QuantumWitness w = QuantumWitness::zeros(4, game.num_inputs(), game.num_outputs());
  for (std::size_t i = 0; i < sys.m; ++i) {
    // observables of constraint i in variable order
    std::vector<CMat> obs;
    for (std::size_t j : ss.supports[i]) obs.push_back(detail::magic_square_observable(static_cast<int>(j) / 3, static_cast<int>(j) % 3));
    for (std::uint32_t x : ss.solutions[i]) {
      CMat proj = CMat::identity(4);
      for (std::size_t t = 0; t < ss.supports[i].size(); ++t) {
        double sign = ((x >> ss.supports[i][t]) & 1) ? -1.0 : 1.0;
        CMat half = Complex(0.5, 0) * (CMat::identity(4) + Complex(sign, 0) * obs[t]);
        proj = proj * half;
      }
      w.at(i, output_index(x)) = proj;
    }
  }
  return w;
}

// Push the syncBCS witness through q_{(i,x),(j,y)} = delta_{ij} E_{i,x+y}:
// a magic-unitary witness for Iso(G_{A,b}, G_{A,0}).
inline QuantumWitness magic_square_iso_witness() {
  LinearSystemZ2 sys = magic_square_instance();
  SyncGame game = sync_bcs_game(sys);
  QuantumWitness base = magic_square_witness();

  BcsVertexTable vb = bcs_vertex_table(sys);
  BcsVertexTable v0 = bcs_vertex_table(sys.homogeneous());
  auto output_index = [&](std::uint32_t x) {
    std::string lab = bit_label(x, sys.n);
    for (std::size_t a = 0; a < game.outputs().size(); ++a)
      if (game.outputs()[a] == lab) return a;
    throw std::logic_error("magic_square_iso_witness: missing output");
  };

  QuantumWitness w = QuantumWitness::zeros(base.d, vb.verts.size(), v0.verts.size());
  for (std::size_t p = 0; p < vb.verts.size(); ++p)
    for (std::size_t q = 0; q < v0.verts.size(); ++q) {
      auto [i, x] = vb.verts[p];
      auto [j, y] = v0.verts[q];
      if (i != j) continue;
      w.at(p, q) = base.at(i, output_index(x ^ y));
    }
  return w;
}

}  // namespace syncgame
