#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syncgame/bigint.hpp"
#include "syncgame/charpoly.hpp"
#include "syncgame/graph.hpp"
#include "syncgame/graph_iso.hpp"

namespace syncgame {

namespace detail {

// Cyclic Jacobi for real symmetric matrices. The only floating-point
// spectral code in the project; exact gates run first so each eigenspace
// is one-dimensional by the time this executes.
struct EigenDecomposition {
  std::vector<double> values;            // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] belongs to values[k], unit norm
};

inline EigenDecomposition jacobi_eigen(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = g.adjacent(i, j) ? 1.0 : 0.0;
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        double theta = (a[q * n + q] - a[p * n + p]) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1.0 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });
  EigenDecomposition out;
  for (std::size_t k : order) {
    out.values.push_back(a[k * n + k]);
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v[i * n + k];
    out.vectors.push_back(std::move(col));
  }
  return out;
}

}  // namespace detail

enum class QautVerdict { CertifiedClassicalQAut, TrivialQAut, Refuted, Inconclusive };

inline std::string to_string(QautVerdict v) {
  switch (v) {
    case QautVerdict::CertifiedClassicalQAut: return "CertifiedClassicalQAut";
    case QautVerdict::TrivialQAut: return "TrivialQAut";
    case QautVerdict::Refuted: return "Refuted";
    default: return "Inconclusive";
  }
}

struct CertificateReport {
  QautVerdict verdict = QautVerdict::Inconclusive;
  std::string reason;
  bool simple_spectrum = false;
  bool supports_ok = false;
  std::vector<double> eigenvalues;
  double min_eigenvalue_gap = 0;
  double support_margin = 0;          // smallest in-support magnitude
  std::size_t ambiguous_entries = 0;  // magnitudes inside (1e-9, 1e-6)
  std::vector<std::vector<int>> support_table;  // per eigenvector, 0/1 per vertex
  BigInt aut_order;
};

// Sufficient criterion for the quantum automorphism group being classical:
// simple spectrum (decided exactly) and no two eigenvectors with disjoint
// supports (floating point, with an explicit ambiguity band). Upgrades to
// TrivialQAut when the classical automorphism group is trivial too.
inline CertificateReport classical_qaut_certificate(const Graph& g, double support_eps = 1e-6,
                                                    double ambiguity_floor = 1e-9) {
  if (g.n() > 64) throw std::invalid_argument("classical_qaut_certificate: graphs above 64 vertices");
  CertificateReport rep;
  rep.simple_spectrum = spectrum_is_simple(g);
  if (!rep.simple_spectrum) {
    rep.verdict = QautVerdict::Inconclusive;
    rep.reason = "adjacency spectrum is not simple";
    return rep;
  }
  detail::EigenDecomposition eig = detail::jacobi_eigen(g);
  rep.eigenvalues = eig.values;
  rep.min_eigenvalue_gap = 1e300;
  for (std::size_t k = 0; k + 1 < eig.values.size(); ++k)
    rep.min_eigenvalue_gap = std::min(rep.min_eigenvalue_gap, eig.values[k + 1] - eig.values[k]);

  rep.support_margin = 1e300;
  for (const auto& vec : eig.vectors) {
    std::vector<int> row;
    for (double entry : vec) {
      double m = std::abs(entry);
      if (m > ambiguity_floor && m <= support_eps) ++rep.ambiguous_entries;
      if (m > support_eps) rep.support_margin = std::min(rep.support_margin, m);
      row.push_back(m > support_eps ? 1 : 0);
    }
    rep.support_table.push_back(std::move(row));
  }
  if (rep.ambiguous_entries > 0) {
    rep.verdict = QautVerdict::Inconclusive;
    rep.reason = "eigenvector entries inside the ambiguity band";
    return rep;
  }
  rep.supports_ok = true;
  for (std::size_t i = 0; i < rep.support_table.size() && rep.supports_ok; ++i)
    for (std::size_t j = i + 1; j < rep.support_table.size() && rep.supports_ok; ++j) {
      bool meet = false;
      for (std::size_t v = 0; v < g.n(); ++v)
        if (rep.support_table[i][v] && rep.support_table[j][v]) {
          meet = true;
          break;
        }
      if (!meet) rep.supports_ok = false;
    }
  if (!rep.supports_ok) {
    rep.verdict = QautVerdict::Inconclusive;
    rep.reason = "two eigenvectors have disjoint supports";
    return rep;
  }
  rep.verdict = QautVerdict::CertifiedClassicalQAut;
  rep.aut_order = automorphism_order(g);
  if (rep.aut_order == BigInt(1)) {
    rep.verdict = QautVerdict::TrivialQAut;
    rep.reason = "classical quantum automorphism group of order 1";
  } else {
    rep.reason = "quantum automorphism group is the classical one, order " + rep.aut_order.to_string();
  }
  return rep;
}

// Degree blocks constraining any magic unitary intertwining the two
// adjacency matrices: an entry p_{ij} can be nonzero only when deg(i) =
// deg(j); mismatched degree multisets refute quantum isomorphism outright.
struct DegreeObstruction {
  bool refuted = false;
  // degree -> (vertices of x, vertices of y)
  std::map<std::size_t, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> blocks;
};

inline DegreeObstruction degree_obstruction(const Graph& x, const Graph& y) {
  DegreeObstruction out;
  for (std::size_t v = 0; v < x.n(); ++v) out.blocks[x.degree(v)].first.push_back(v);
  for (std::size_t w = 0; w < y.n(); ++w) out.blocks[y.degree(w)].second.push_back(w);
  for (const auto& [deg, cls] : out.blocks)
    if (cls.first.size() != cls.second.size()) out.refuted = true;
  if (x.n() != y.n()) out.refuted = true;
  return out;
}

struct SpectralObstruction {
  bool refuted = false;
  CharPoly px, py;
};

// isospectrality is necessary for quantum isomorphism
inline SpectralObstruction isospectrality_obstruction(const Graph& x, const Graph& y) {
  SpectralObstruction out;
  out.px = char_poly(x);
  out.py = char_poly(y);
  out.refuted = !(x.n() == y.n() && out.px == out.py);
  return out;
}

// The switching example: the Frucht graph plus a 13th vertex joined to a
// 6-subset or to its complement gives isospectral, non-isomorphic graphs
// whose quantum automorphism groups are trivial.
struct NisoReport {
  std::vector<std::size_t> subset;
  Graph x1, x2;
  bool isospectral = false;
  bool isomorphic = false;
  BigInt aut_order_x1, aut_order_x2;
  DegreeObstruction degrees;
  bool new_vertex_isolated = false;  // vertex 12 alone in its degree block
  CertificateReport frucht_certificate;
};

inline NisoReport niso_pipeline(std::optional<std::vector<std::size_t>> subset_opt = std::nullopt,
                                int threads = 1) {
  std::vector<std::size_t> subset = subset_opt.value_or(std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
  if (subset.size() != 6) throw std::invalid_argument("niso_pipeline: subset must have 6 vertices");
  for (auto v : subset)
    if (v >= 12) throw std::invalid_argument("niso_pipeline: subset vertex out of range");
  Graph base = frucht();
  auto [x1, x2] = gm_switch(base, subset);
  NisoReport rep{subset, x1, x2, false, false, BigInt(0), BigInt(0), {}, false, {}};
  rep.isospectral = is_isospectral(x1, x2);
  rep.isomorphic = is_isomorphic(x1, x2).has_value();
  if (threads >= 2) {
    // the two graphs are independent; the result does not depend on this
    auto fut = std::async(std::launch::async, [&] { return automorphism_order(x2); });
    rep.aut_order_x1 = automorphism_order(x1);
    rep.aut_order_x2 = fut.get();
  } else {
    rep.aut_order_x1 = automorphism_order(x1);
    rep.aut_order_x2 = automorphism_order(x2);
  }
  rep.degrees = degree_obstruction(x1, x2);
  auto it = rep.degrees.blocks.find(6);
  rep.new_vertex_isolated = it != rep.degrees.blocks.end() && it->second.first.size() == 1 &&
                            it->second.first[0] == 12 && it->second.second.size() == 1 &&
                            it->second.second[0] == 12;
  rep.frucht_certificate = classical_qaut_certificate(base);
  return rep;
}

}  // namespace syncgame
