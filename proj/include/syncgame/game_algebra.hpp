#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "syncgame/bcs.hpp"
#include "syncgame/game.hpp"
#include "syncgame/graph.hpp"
#include "syncgame/ncpoly.hpp"
#include "syncgame/rewrite.hpp"

namespace syncgame {

// A synchronous game together with its *-algebra presentation. Generators
// are self-adjoint letters e_<v>_<a>; by_pair maps a (v, a) index pair to
// its letter. For the reduced Iso builder the key is (x-vertex, y-vertex),
// for everything else it is (input index, output index).
struct GameAlgebra {
  SyncGame game;
  Presentation pres;
  std::map<std::pair<std::size_t, std::size_t>, Letter> by_pair;
  std::vector<std::pair<std::size_t, std::size_t>> pair_of;  // letter -> key
  bool reduced_iso = false;

  Letter letter(std::size_t v, std::size_t a) const {
    auto it = by_pair.find({v, a});
    if (it == by_pair.end()) throw std::out_of_range("GameAlgebra: no generator for that pair");
    return it->second;
  }
  bool has_letter(std::size_t v, std::size_t a) const { return by_pair.count({v, a}) != 0; }
};

// The four relation families of the game algebra presentation: self-adjointness
// (carried by the alphabet), idempotence, rows summing to one, and the
// lambda-zero products. Generators dead on the diagonal (lambda(v,v,a,a)=0)
// are pruned at build time unless prune_dead_outputs is false.
inline GameAlgebra algebra_of_game(const SyncGame& game, bool prune_dead_outputs = true) {
  GameAlgebra alg{game, {}, {}, {}, false};
  const std::size_t ni = game.num_inputs(), no = game.num_outputs();
  for (std::size_t v = 0; v < ni; ++v)
    for (std::size_t a = 0; a < no; ++a) {
      if (prune_dead_outputs && !game.output_alive(v, a)) continue;
      Letter l = alg.pres.alphabet.add_selfadjoint("e_" + std::to_string(v) + "_" + std::to_string(a));
      alg.by_pair[{v, a}] = l;
      alg.pair_of.push_back({v, a});
    }
  for (std::size_t v = 0; v < ni; ++v) {
    NCPoly row = NCPoly::one();
    for (std::size_t a = 0; a < no; ++a) {
      if (!alg.has_letter(v, a)) continue;
      NCPoly e = NCPoly::letter(alg.letter(v, a));
      alg.pres.add_relation(e * e - e);
      row -= e;
    }
    alg.pres.add_relation(row);
  }
  for (std::size_t v = 0; v < ni; ++v)
    for (std::size_t w = 0; w < ni; ++w)
      for (std::size_t a = 0; a < no; ++a) {
        if (!alg.has_letter(v, a)) continue;
        for (std::size_t b = 0; b < no; ++b) {
          if (!alg.has_letter(w, b)) continue;
          if (game.lambda(v, w, a, b)) continue;
          alg.pres.add_relation(NCPoly::letter(alg.letter(v, a)) * NCPoly::letter(alg.letter(w, b)));
        }
      }
  return alg;
}

// Reduced presentation of A(Iso(X,Y)) on n^2 generators: a quantum
// permutation U = (e_{g,h}) intertwining the adjacency matrices. For
// mismatched vertex counts the full game presentation is returned (its
// collapse is the expected outcome).
inline GameAlgebra iso_algebra(const Graph& x, const Graph& y) {
  if (x.n() != y.n()) return algebra_of_game(iso_game(x, y));
  const std::size_t n = x.n();
  GameAlgebra alg{iso_game(x, y), {}, {}, {}, true};
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      Letter l = alg.pres.alphabet.add_selfadjoint("e_" + std::to_string(g) + "_" + std::to_string(h));
      alg.by_pair[{g, h}] = l;
      alg.pair_of.push_back({g, h});
    }
  auto e = [&](std::size_t g, std::size_t h) { return NCPoly::letter(alg.letter(g, h)); };
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) alg.pres.add_relation(e(g, h) * e(g, h) - e(g, h));
  for (std::size_t g = 0; g < n; ++g) {
    NCPoly row = NCPoly::one(), col = NCPoly::one();
    for (std::size_t h = 0; h < n; ++h) {
      row -= e(g, h);
      col -= e(h, g);
    }
    alg.pres.add_relation(row);
    alg.pres.add_relation(col);
  }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t h2 = 0; h2 < n; ++h2) {
        if (h == h2) continue;
        alg.pres.add_relation(e(g, h) * e(g, h2));  // row orthogonality
        alg.pres.add_relation(e(h, g) * e(h2, g));  // column orthogonality
      }
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      NCPoly lhs, rhs;
      for (std::size_t g2 = 0; g2 < n; ++g2)
        if (x.adjacent(g, g2)) lhs += e(g2, h);
      for (std::size_t h2 = 0; h2 < n; ++h2)
        if (y.adjacent(h, h2)) rhs += e(g, h2);
      alg.pres.add_relation(lhs - rhs);
    }
  return alg;
}

// Scalar character induced by an answer function h (Theorem: deterministic
// strategies are exactly the C-points of the game algebra).
inline Evaluation evaluation_from_strategy(const GameAlgebra& alg, const std::vector<std::size_t>& h) {
  Evaluation ev;
  for (std::size_t l = 0; l < alg.pair_of.size(); ++l) {
    auto [v, a] = alg.pair_of[l];
    ev[static_cast<Letter>(l)] = Rational(h[v] == a ? 1 : 0);
  }
  return ev;
}

// Character of the reduced Iso presentation induced by a classical
// isomorphism pi (vertex map x -> y).
inline Evaluation evaluation_from_permutation(const GameAlgebra& alg, const std::vector<std::size_t>& pi) {
  if (!alg.reduced_iso) throw std::invalid_argument("evaluation_from_permutation: reduced Iso algebras only");
  Evaluation ev;
  for (std::size_t l = 0; l < alg.pair_of.size(); ++l) {
    auto [g, h] = alg.pair_of[l];
    ev[static_cast<Letter>(l)] = Rational(pi[g] == h ? 1 : 0);
  }
  return ev;
}

// The three generator maps of the hereditary equivalence between
// syncBCS(A,b), Iso(G_{A,b}, G_{A,0}) and Hom(K_m, complement(G_{A,b})).
struct EquivalenceMaps {
  GameAlgebra sync_alg;
  GameAlgebra iso_alg;
  GameAlgebra hom_alg;
  Presentation hom_closed;        // hom presentation after the hereditary step
  bool closure_fired = false;     // sum q_i* q_i rewrote to 0
  HomReport pi1;                  // Iso  -> syncBCS
  HomReport pi2;                  // Hom  -> Iso
  HomReport pi3;                  // syncBCS -> Hom (hereditary quotient)
  HomReport pi3_without_closure;  // the same images before closing
  bool pass = false;
};

inline EquivalenceMaps equivalence_maps(const LinearSystemZ2& sys, std::size_t degree_bound = 4,
                                        std::size_t rule_cap = 50000) {
  SolutionSets ss = solution_sets(sys);
  std::size_t total = 0;
  for (const auto& s : ss.solutions) total += s.size();
  if (total > 64) throw std::invalid_argument("equivalence_maps: symbolic budget exceeded (sum |S_i^b| > 64)");

  SyncGame bcs_game = sync_bcs_game(sys);
  Graph gb = graph_of_system(sys);
  Graph g0 = graph_of_system(sys.homogeneous());
  EquivalenceMaps out{algebra_of_game(bcs_game), iso_algebra(gb, g0),
                      algebra_of_game(hom_game(complete_graph(sys.m), complement(gb))),
                      {}, false, {}, {}, {}, {}, false};

  BcsVertexTable vb = bcs_vertex_table(sys);
  BcsVertexTable v0 = bcs_vertex_table(sys.homogeneous());
  auto sync_output_index = [&](std::uint32_t x) -> std::size_t {
    std::string lab = bit_label(x, sys.n);
    for (std::size_t a = 0; a < bcs_game.outputs().size(); ++a)
      if (bcs_game.outputs()[a] == lab) return a;
    throw std::logic_error("equivalence_maps: local solution missing from the output alphabet");
  };

  RewriteSystem rs_sync = complete(out.sync_alg.pres, degree_bound, rule_cap);
  RewriteSystem rs_iso = complete(out.iso_alg.pres, degree_bound, rule_cap);
  RewriteSystem rs_hom = complete(out.hom_alg.pres, degree_bound, rule_cap);

  // pi1: e_{(i,x),(j,y)} -> delta_{ij} e_{i, x+y}
  std::map<Letter, NCPoly> images1;
  for (std::size_t l = 0; l < out.iso_alg.pair_of.size(); ++l) {
    auto [p, q] = out.iso_alg.pair_of[l];
    auto [i, x] = vb.verts[p];
    auto [j, y] = v0.verts[q];
    if (i != j)
      images1[static_cast<Letter>(l)] = NCPoly::zero();
    else
      images1[static_cast<Letter>(l)] =
          NCPoly::letter(out.sync_alg.letter(i, sync_output_index(x ^ y)));
  }
  out.pi1 = verify_homomorphism(out.iso_alg.pres, rs_sync, images1);

  // pi2: e_{j,(i,x)} -> e_{(i,x),(j,0)}
  std::map<Letter, NCPoly> images2;
  for (std::size_t l = 0; l < out.hom_alg.pair_of.size(); ++l) {
    auto [j, vert] = out.hom_alg.pair_of[l];
    auto [i, x] = vb.verts[vert];
    (void)i;
    (void)x;
    std::size_t q = v0.index_of(j, 0);
    images2[static_cast<Letter>(l)] = NCPoly::letter(out.iso_alg.letter(vert, q));
  }
  out.pi2 = verify_homomorphism(out.hom_alg.pres, rs_iso, images2);

  // hereditary step: q_i = 1 - sum_k sum_x e_{k,(i,x)}
  std::vector<NCPoly> candidates;
  for (std::size_t i = 0; i < sys.m; ++i) {
    NCPoly q = NCPoly::one();
    for (std::size_t k = 0; k < sys.m; ++k)
      for (std::uint32_t x : ss.solutions[i])
        q -= NCPoly::letter(out.hom_alg.letter(k, vb.index_of(i, x)));
    candidates.push_back(q);
  }
  {
    NCPoly sum;
    for (const auto& q : candidates) sum += q.star(out.hom_alg.pres.alphabet) * q;
    out.closure_fired = normal_form(sum, rs_hom).is_zero();
  }
  out.hom_closed = hereditary_closure_step(out.hom_alg.pres, rs_hom, candidates);
  RewriteSystem rs_hom_closed = complete(out.hom_closed, degree_bound, rule_cap);

  // pi3: e_{i,x} -> f_{i,x} = sum_k e_{k,(i,x)}
  std::map<Letter, NCPoly> images3;
  for (std::size_t l = 0; l < out.sync_alg.pair_of.size(); ++l) {
    auto [i, a] = out.sync_alg.pair_of[l];
    std::uint32_t x = 0;
    {
      const std::string& lab = bcs_game.outputs()[a];
      for (std::size_t j = 0; j < lab.size(); ++j)
        if (lab[j] == '1') x |= 1u << j;
    }
    NCPoly f;
    for (std::size_t k = 0; k < sys.m; ++k)
      f += NCPoly::letter(out.hom_alg.letter(k, vb.index_of(i, x)));
    images3[static_cast<Letter>(l)] = f;
  }
  out.pi3 = verify_homomorphism(out.sync_alg.pres, rs_hom_closed, images3);
  out.pi3_without_closure = verify_homomorphism(out.sync_alg.pres, rs_hom, images3);

  out.pass = out.pi1.pass && out.pi2.pass && out.pi3.pass && out.closure_fired;
  return out;
}

}  // namespace syncgame
