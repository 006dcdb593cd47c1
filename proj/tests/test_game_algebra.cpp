#include <random>

#include "doctest.h"
#include "syncgame/bcs.hpp"
#include "syncgame/game_algebra.hpp"
#include "syncgame/graph.hpp"
#include "syncgame/graph_iso.hpp"
#include "syncgame/rewrite.hpp"

using namespace syncgame;

TEST_CASE("one-input one-output game forces e = 1") {
  SyncGame g({"v"}, {"a"}, [](std::size_t, std::size_t, std::size_t, std::size_t) { return true; });
  GameAlgebra alg = algebra_of_game(g);
  CHECK(alg.pair_of.size() == 1);
  RewriteSystem rs = complete(alg.pres, 3);
  CHECK(normal_form(NCPoly::letter(alg.letter(0, 0)), rs) == NCPoly::one());
}

TEST_CASE("Hom(K5,K4) algebra: 20 generators and the -1 pathology") {
  GameAlgebra alg = algebra_of_game(hom_game(complete_graph(5), complete_graph(4)));
  CHECK(alg.pair_of.size() == 20);

  // color classes kill cross-vertex products: e_{x,a} e_{y,a} is a relation
  NCPoly cross = NCPoly::letter(alg.letter(0, 2)) * NCPoly::letter(alg.letter(3, 2));
  CHECK(alg.pres.has_relation(cross));

  RewriteSystem rs = complete(alg.pres, 4);
  NCPoly sum;
  for (std::size_t a = 0; a < 4; ++a) {
    NCPoly q = NCPoly::one();
    for (std::size_t x = 0; x < 5; ++x) q -= NCPoly::letter(alg.letter(x, a));
    sum += q;
  }
  NCPoly expect = Rational(-1) * NCPoly::one();
  CHECK(normal_form(sum, rs) == expect);

  // the algebra is not collapsed at this degree: 1 stays 1
  CHECK(normal_form(NCPoly::one(), rs) == NCPoly::one());
}

TEST_CASE("syncBCS algebra prunes dead outputs") {
  GameAlgebra alg = algebra_of_game(sync_bcs_game(magic_square_instance()));
  CHECK(alg.pair_of.size() == 24);  // 6 rows x 4 local solutions
  for (auto [i, a] : alg.pair_of) CHECK(alg.game.output_alive(i, a));
}

TEST_CASE("iso algebra with mismatched vertex counts falls back to the full game and collapses") {
  GameAlgebra alg = iso_algebra(complete_graph(2), complete_graph(3));
  CHECK(!alg.reduced_iso);
  TrivialityResult res = triviality_status(alg.pres, 3);
  CHECK(res.kind == TrivialityResult::Kind::TrivialCertified);
  CHECK(expand_combination(alg.pres, res.certificate) == NCPoly::one());
}

TEST_CASE("iso algebra of K1 forces the single generator to 1") {
  GameAlgebra alg = iso_algebra(Graph(1), Graph(1));
  RewriteSystem rs = complete(alg.pres, 3);
  CHECK(normal_form(NCPoly::letter(alg.letter(0, 0)), rs) == NCPoly::one());
}

TEST_CASE("identity evaluation satisfies Iso(C5,C5)") {
  GameAlgebra alg = iso_algebra(cycle_graph(5), cycle_graph(5));
  std::vector<std::size_t> identity{0, 1, 2, 3, 4};
  CHECK(satisfies_all(alg.pres, evaluation_from_permutation(alg, identity)));
  // a non-automorphism assignment violates them
  std::vector<std::size_t> bad{1, 0, 2, 3, 4};
  CHECK(!satisfies_all(alg.pres, evaluation_from_permutation(alg, bad)));
}

TEST_CASE("Iso(K3, complement K3) collapses at degree 3 with a replayable certificate") {
  GameAlgebra alg = iso_algebra(complete_graph(3), complement(complete_graph(3)));
  TrivialityResult res = triviality_status(alg.pres, 3);
  REQUIRE(res.kind == TrivialityResult::Kind::TrivialCertified);
  CHECK(expand_combination(alg.pres, res.certificate) == NCPoly::one());
}

TEST_CASE("Iso(C5,C5) is nontrivial via the identity character") {
  GameAlgebra alg = iso_algebra(cycle_graph(5), cycle_graph(5));
  std::vector<std::size_t> identity{0, 1, 2, 3, 4};
  TrivialityResult res = triviality_status(alg.pres, 3, evaluation_from_permutation(alg, identity));
  CHECK(res.kind == TrivialityResult::Kind::NontrivialCertified);
}

TEST_CASE("Iso(K_n,K_n) does not collapse at degree 4") {
  GameAlgebra alg = iso_algebra(complete_graph(3), complete_graph(3));
  RewriteSystem rs = complete(alg.pres, 4);
  CHECK(normal_form(NCPoly::one(), rs) == NCPoly::one());
}

TEST_CASE("strategy characters satisfy the game relations") {
  std::vector<SyncGame> games{hom_game(complete_graph(3), complete_graph(3)),
                              iso_game(cycle_graph(4), cycle_graph(4)),
                              sync_bcs_game(LinearSystemZ2(2, 3, {0b011, 0b110}, 0b01))};
  for (const auto& g : games) {
    auto h = perfect_deterministic_search(g);
    REQUIRE(h.has_value());
    GameAlgebra alg = algebra_of_game(g);
    CHECK(satisfies_all(alg.pres, evaluation_from_strategy(alg, *h)));
  }
}

TEST_CASE("full game presentation derives the e_{g,h} = e_{h,g} bridge at degree 4") {
  Graph c4 = cycle_graph(4);
  GameAlgebra full = algebra_of_game(iso_game(c4, c4));
  RewriteSystem rs = complete(full.pres, 4);
  REQUIRE(rs.saturated);
  const std::size_t n = 4;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      NCPoly bridge = NCPoly::letter(full.letter(g, n + h)) - NCPoly::letter(full.letter(n + h, g));
      CHECK(normal_form(bridge, rs).is_zero());
    }
  // column sums are also derived rather than axiomatic in the game algebra
  for (std::size_t h = 0; h < n; ++h) {
    NCPoly col = NCPoly::one();
    for (std::size_t g = 0; g < n; ++g) col -= NCPoly::letter(full.letter(g, n + h));
    CHECK(normal_form(col, rs).is_zero());
  }
}

TEST_CASE("reduced and full Iso presentations are *-isomorphic for (C4,C4)") {
  Graph c4 = cycle_graph(4);
  GameAlgebra reduced = iso_algebra(c4, c4);
  GameAlgebra full = algebra_of_game(iso_game(c4, c4));
  RewriteSystem rs_red = complete(reduced.pres, 4);
  RewriteSystem rs_full = complete(full.pres, 4);
  const std::size_t n = 4;

  std::map<Letter, NCPoly> red_to_full;
  for (std::size_t l = 0; l < reduced.pair_of.size(); ++l) {
    auto [g, h] = reduced.pair_of[l];
    red_to_full[static_cast<Letter>(l)] = NCPoly::letter(full.letter(g, n + h));
  }
  CHECK(verify_homomorphism(reduced.pres, rs_full, red_to_full).pass);

  std::map<Letter, NCPoly> full_to_red;
  for (std::size_t l = 0; l < full.pair_of.size(); ++l) {
    auto [v, a] = full.pair_of[l];
    // v in X side answers a = n + h; v = n + h in Y side answers a = g
    if (v < n)
      full_to_red[static_cast<Letter>(l)] = NCPoly::letter(reduced.letter(v, a - n));
    else
      full_to_red[static_cast<Letter>(l)] = NCPoly::letter(reduced.letter(a, v - n));
  }
  CHECK(verify_homomorphism(full.pres, rs_red, full_to_red).pass);
}

TEST_CASE("column orthogonality is derivable from the remaining axioms for (C4,C4)") {
  Graph c4 = cycle_graph(4);
  GameAlgebra alg = iso_algebra(c4, c4);
  // rebuild the presentation without the column-orthogonality monomials
  Presentation ablated;
  ablated.alphabet = alg.pres.alphabet;
  auto is_col_orth = [&](const NCPoly& r) {
    if (r.term_count() != 1 || r.degree() != 2) return false;
    const Word& w = r.leading_word();
    auto [g1, h1] = alg.pair_of[w[0]];
    auto [g2, h2] = alg.pair_of[w[1]];
    return h1 == h2 && g1 != g2;
  };
  for (const auto& r : alg.pres.relations)
    if (!is_col_orth(r)) ablated.add_relation(r);
  REQUIRE(ablated.relations.size() < alg.pres.relations.size());
  RewriteSystem rs = complete(ablated, 4);
  for (std::size_t g = 0; g < 4; ++g)
    for (std::size_t g2 = 0; g2 < 4; ++g2)
      for (std::size_t h = 0; h < 4; ++h) {
        if (g == g2) continue;
        NCPoly prod = NCPoly::letter(alg.letter(g, h)) * NCPoly::letter(alg.letter(g2, h));
        CHECK(normal_form(prod, rs).is_zero());
      }
}

TEST_CASE("equivalence maps verify for the 1x2 system") {
  EquivalenceMaps em = equivalence_maps(LinearSystemZ2(1, 2, {0b11}, 0));
  CHECK(em.pass);
  CHECK(em.closure_fired);
  CHECK(em.pi1.pass);
  CHECK(em.pi2.pass);
  CHECK(em.pi3.pass);
}

TEST_CASE("equivalence maps verify for the 2x3 system") {
  EquivalenceMaps em = equivalence_maps(LinearSystemZ2(2, 3, {0b011, 0b110}, 0b10));
  CHECK(em.pass);
  CHECK(em.pi1.pass);
  CHECK(em.pi2.pass);
  CHECK(em.pi3.pass);
  // with m <= 3 the rewriting recovers q_i = 0 on its own (projections
  // summing to a scalar are rigid in triples), so the closure adds nothing
  for (const auto& chk : em.pi3_without_closure.checks) CHECK(chk.residual.is_zero());
}

TEST_CASE("hereditary closure is genuinely needed from four rows on") {
  // homogeneous parity 4-cycle: quadruples of projections summing to a
  // scalar are no longer rigid, and pi3 fails before the closure step
  EquivalenceMaps em = equivalence_maps(LinearSystemZ2(4, 4, {0b0011, 0b0110, 0b1100, 0b1001}, 0));
  CHECK(em.pass);
  CHECK(em.closure_fired);
  int nonzero = 0;
  for (const auto& chk : em.pi3_without_closure.checks)
    if (!chk.residual.is_zero()) ++nonzero;
  CHECK(nonzero > 0);
}

TEST_CASE("pi1 composed with a solution character gives the syncBCS strategy") {
  LinearSystemZ2 sys(2, 3, {0b011, 0b110}, 0b01);
  auto solved = is_classically_solvable(sys);
  REQUIRE(solved.solution.has_value());
  EquivalenceMaps em = equivalence_maps(sys);

  // character of the sync algebra induced by the solution
  SyncGame game = em.sync_alg.game;
  std::vector<std::size_t> h(game.num_inputs());
  for (std::size_t i = 0; i < sys.m; ++i) {
    std::uint32_t restricted = *solved.solution & sys.rows[i];
    std::string lab = bit_label(restricted, sys.n);
    for (std::size_t a = 0; a < game.outputs().size(); ++a)
      if (game.outputs()[a] == lab) h[i] = a;
  }
  Evaluation sync_ev = star_extend(em.sync_alg.pres.alphabet,
                                   evaluation_from_strategy(em.sync_alg, h));
  CHECK(satisfies_all(em.sync_alg.pres, sync_ev));

  // pull back along pi1: the composite must satisfy the Iso relations and
  // be the permutation character of the shift bijection
  BcsVertexTable vb = bcs_vertex_table(sys);
  BcsVertexTable v0 = bcs_vertex_table(sys.homogeneous());
  Evaluation iso_ev;
  for (std::size_t l = 0; l < em.iso_alg.pair_of.size(); ++l) {
    auto [p, q] = em.iso_alg.pair_of[l];
    auto [i, x] = vb.verts[p];
    auto [j, y] = v0.verts[q];
    Rational val(0);
    if (i == j) {
      std::string lab = bit_label(x ^ y, sys.n);
      std::size_t a = 0;
      for (; a < game.outputs().size(); ++a)
        if (game.outputs()[a] == lab) break;
      val = sync_ev.at(em.sync_alg.letter(i, a));
    }
    iso_ev[static_cast<Letter>(l)] = val;
  }
  CHECK(satisfies_all(em.iso_alg.pres, iso_ev));
  for (std::size_t p = 0; p < vb.verts.size(); ++p) {
    auto [i, x] = vb.verts[p];
    std::uint32_t shift = *solved.solution & sys.rows[i];
    std::size_t q = v0.index_of(i, x ^ shift);
    CHECK(iso_ev.at(em.iso_alg.letter(p, q)) == Rational(1));
  }
}
