#include "doctest.h"
#include "syncgame/config.hpp"
#include "syncgame/json_io.hpp"
#include "syncgame/repro.hpp"

using namespace syncgame;

TEST_CASE("graph json mirror round trip and validation") {
  Graph g = frucht();
  Graph back = graph_from_json(graph_to_json(g));
  CHECK(back == g);

  CHECK_THROWS_WITH_AS(graph_from_json(Json{{"n", 3}, {"edges", {{0, 0}}}}),
                       "graph json: edge 0 is a self-loop", std::invalid_argument);
  CHECK_THROWS_WITH_AS(graph_from_json(Json{{"n", 3}, {"edges", {{0, 1}, {1, 0}}}}),
                       "graph json: edge 1 repeated", std::invalid_argument);
  CHECK_THROWS_AS(graph_from_json(Json{{"n", 2}, {"edges", {{0, 5}}}}), std::invalid_argument);
}

TEST_CASE("game json round trip preserves the predicate") {
  SyncGame g = iso_game(complete_graph(3), complete_graph(3));
  SyncGame back = game_from_json(game_to_json(g));
  REQUIRE(back.num_inputs() == g.num_inputs());
  REQUIRE(back.num_outputs() == g.num_outputs());
  for (std::size_t v = 0; v < g.num_inputs(); ++v)
    for (std::size_t w = 0; w < g.num_inputs(); ++w)
      for (std::size_t a = 0; a < g.num_outputs(); ++a)
        for (std::size_t b = 0; b < g.num_outputs(); ++b)
          CHECK(back.lambda(v, w, a, b) == g.lambda(v, w, a, b));
}

TEST_CASE("witness json round trip") {
  QuantumWitness w = magic_square_witness();
  QuantumWitness back = witness_from_json(witness_to_json(w));
  CHECK(back.d == w.d);
  double diff = 0;
  for (std::size_t v = 0; v < w.ni; ++v)
    for (std::size_t a = 0; a < w.no; ++a) diff += (back.at(v, a) - w.at(v, a)).frobenius_norm();
  CHECK(diff < 1e-12);
}

TEST_CASE("quantum graph json round trip keeps the axioms") {
  QuantumGraph qg = quantum_complete(QuantumSet::tracial({2}));
  QuantumGraph back = qgraph_from_json(qgraph_to_json(qg));
  CHECK((back.a_nat - qg.a_nat).frobenius_norm() < 1e-9);
  CHECK(check_quantum_adjacency(back, 1e-8).pass);

  // classical auto-promotion from the graph mirror
  QuantumGraph promoted = qgraph_from_json(graph_to_json(cycle_graph(5)));
  CHECK(promoted.a_exact.has_value());
  CHECK(check_quantum_adjacency(promoted).pass);
}

TEST_CASE("strategy json forms") {
  SyncGame g = iso_game(cycle_graph(4), cycle_graph(4));
  auto h = perfect_deterministic_search(g);
  REQUIRE(h.has_value());
  CondProb p = strategy_from_json(strategy_to_json(*h), g);
  CHECK(is_perfect_strategy(p, g));
  CHECK_THROWS_AS(strategy_from_json(Json{{"type", "nonsense"}}, g), std::invalid_argument);
  CHECK_THROWS_AS(strategy_from_json(Json{{"type", "deterministic"}, {"h", {0}}}, g), std::invalid_argument);
}

TEST_CASE("rewrite system cache round trip") {
  GameAlgebra alg = iso_algebra(complete_graph(3), complete_graph(3));
  RewriteSystem rs = complete(alg.pres, 3);
  RewriteSystem back = rewrite_system_from_json(rewrite_system_to_json(rs));
  CHECK(back.rules.size() == rs.rules.size());
  CHECK(back.saturated == rs.saturated);
  // reductions agree
  NCPoly probe = NCPoly::letter(alg.letter(0, 1)) * NCPoly::letter(alg.letter(0, 1)) -
                 NCPoly::letter(alg.letter(2, 2));
  CHECK(normal_form(probe, back) == normal_form(probe, rs));
}

TEST_CASE("image map parser") {
  Presentation src = parse_presentation("@generators a\na*a - a\n");
  Presentation dst = parse_presentation("@generators x y\nx*x - x\ny*y - y\nx*y\ny*x\n");
  auto images = parse_image_map(src, dst, "# comment\na := x + y\n");
  REQUIRE(images.size() == 1);
  RewriteSystem rs = complete(dst, 4);
  CHECK(verify_homomorphism(src, rs, images).pass);
  CHECK_THROWS_AS(parse_image_map(src, dst, "b := x\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_image_map(src, dst, "a = x\n"), std::invalid_argument);
}

TEST_CASE("config validation and env merge") {
  Config cfg;
  cfg.validate();
  cfg.degree_bound = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = Config{};
  cfg.support_eps = 1e-12;  // below tol
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = Config{};
  cfg.merge_json(Json{{"degree_bound", 4}, {"format", "text"}});
  CHECK(cfg.degree_bound == 4);
  CHECK(cfg.format == "text");
}

TEST_CASE("repro payload shapes") {
  Json f = repro_frucht();
  CHECK(f.at("simple_spectrum").get<bool>());
  CHECK(f.at("supports_ok").get<bool>());
  CHECK(f.at("aut_order").get<int>() == 1);

  Json n = repro_niso(std::nullopt, Config{});
  CHECK(n.at("isospectral").get<bool>());
  CHECK(!n.at("isomorphic").get<bool>());
  CHECK(n.at("aut_orders") == Json::array({1, 1}));

  // repeated runs are byte-identical
  CHECK(repro_frucht().dump() == repro_frucht().dump());
  CHECK(repro_niso(std::nullopt, Config{}).dump() == n.dump());
}
