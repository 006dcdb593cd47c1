#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "syncgame/game.hpp"
#include "syncgame/graph.hpp"
#include "syncgame/graph_iso.hpp"

using namespace syncgame;

namespace {

// exhaustive check over all |O|^|I| functions, independent of the pruned search
bool brute_force_has_strategy(const SyncGame& g) {
  std::vector<std::size_t> h(g.num_inputs(), 0);
  while (true) {
    bool ok = true;
    for (std::size_t v = 0; v < g.num_inputs() && ok; ++v)
      for (std::size_t w = 0; w < g.num_inputs() && ok; ++w)
        if (!g.lambda(v, w, h[v], h[w])) ok = false;
    if (ok) return true;
    std::size_t k = 0;
    while (k < h.size() && ++h[k] == g.num_outputs()) h[k++] = 0;
    if (k == h.size()) return false;
  }
}

}  // namespace

TEST_CASE("hom game predicate") {
  SyncGame g = hom_game(complete_graph(2), complete_graph(2));
  CHECK(g.is_synchronous());
  CHECK(!g.lambda(0, 1, 0, 0));  // edge must land on an edge
  CHECK(!g.lambda(0, 1, 1, 1));
  CHECK(g.lambda(0, 1, 0, 1));
  CHECK(g.lambda(0, 0, 1, 1));
}

TEST_CASE("hom game deterministic strategies and chromatic obstructions") {
  CHECK(perfect_deterministic_search(hom_game(complete_graph(3), complete_graph(3))).has_value());

  SyncGame k4k3 = hom_game(complete_graph(4), complete_graph(3));
  CHECK(!perfect_deterministic_search(k4k3).has_value());
  CHECK(!brute_force_has_strategy(k4k3));

  SyncGame k5k4 = hom_game(complete_graph(5), complete_graph(4));
  CHECK(!perfect_deterministic_search(k5k4).has_value());
  CHECK(!brute_force_has_strategy(k5k4));
}

TEST_CASE("iso game predicate and synchronicity") {
  SyncGame g = iso_game(complete_graph(2), complete_graph(2));
  CHECK(g.is_synchronous());
  for (std::size_t v = 0; v < 4; ++v)
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        if (a != b) CHECK(!g.lambda(v, v, a, b));
  // outputs from the input's own graph are dead
  CHECK(!g.output_alive(0, 0));
  CHECK(g.output_alive(0, 2));
}

TEST_CASE("iso game strategies track isomorphism") {
  CHECK(perfect_deterministic_search(iso_game(cycle_graph(5), cycle_graph(5))).has_value());

  SyncGame bad = iso_game(complete_graph(3), complement(complete_graph(3)));
  CHECK(!perfect_deterministic_search(bad).has_value());
  CHECK(!brute_force_has_strategy(bad));
}

TEST_CASE("iso game has a strategy iff the graphs are isomorphic (n <= 5 sweep)") {
  // representatives of all isomorphism classes on up to 5 vertices
  std::vector<Graph> reps;
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<Graph> classes;
    std::size_t pairs = n * (n - 1) / 2;
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      Graph g(n);
      std::size_t bit = 0;
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = v + 1; w < n; ++w, ++bit)
          if ((mask >> bit) & 1) g.add_edge(v, w);
      bool fresh = true;
      for (const auto& c : classes)
        if (oracle::brute_force_isomorphism(c, g)) {
          fresh = false;
          break;
        }
      if (fresh) classes.push_back(g);
    }
    reps.insert(reps.end(), classes.begin(), classes.end());
  }
  CHECK(reps.size() == 1 + 2 + 4 + 11 + 34);
  for (const auto& x : reps)
    for (const auto& y : reps) {
      if (x.n() != y.n()) continue;
      bool iso = is_isomorphic(x, y).has_value();
      bool strat = perfect_deterministic_search(iso_game(x, y)).has_value();
      CHECK(iso == strat);
    }
}

TEST_CASE("search returns the lexicographically least strategy") {
  SyncGame g = iso_game(cycle_graph(4), cycle_graph(4));
  auto h = perfect_deterministic_search(g);
  REQUIRE(h.has_value());
  // brute-force the lexicographic minimum
  std::vector<std::size_t> cur(g.num_inputs(), 0);
  std::optional<std::vector<std::size_t>> best;
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (best) return;
    if (v == g.num_inputs()) {
      best = cur;
      return;
    }
    for (std::size_t a = 0; a < g.num_outputs() && !best; ++a) {
      cur[v] = a;
      bool ok = true;
      for (std::size_t w = 0; w <= v && ok; ++w)
        if (!g.lambda(v, w, a, cur[w]) || !g.lambda(w, v, cur[w], a)) ok = false;
      if (ok) rec(v + 1);
    }
  };
  rec(0);
  CHECK(*h == *best);
}

TEST_CASE("search budget is a distinct failure mode") {
  SyncGame g = hom_game(complete_graph(5), complete_graph(4));
  CHECK_THROWS_AS(perfect_deterministic_search(g, 3), SearchBudgetExceeded);
}

TEST_CASE("perfect strategy verification") {
  SyncGame g = iso_game(cycle_graph(5), cycle_graph(5));
  auto h = perfect_deterministic_search(g);
  REQUIRE(h.has_value());
  CondProb point = CondProb::point_mass(g, *h);
  CHECK(point.valid());
  CHECK(is_perfect_strategy(point, g));

  SyncGame k2 = iso_game(complete_graph(2), complete_graph(2));
  CondProb uniform(k2.num_inputs(), k2.num_outputs());
  for (std::size_t v = 0; v < 4; ++v)
    for (std::size_t w = 0; w < 4; ++w)
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) uniform.at(a, b, v, w) = 1.0 / 16.0;
  CHECK(uniform.valid());
  CHECK(!is_perfect_strategy(uniform, k2));

  CondProb wrong_shape(2, 2);
  CHECK_THROWS_AS(is_perfect_strategy(wrong_shape, g), std::invalid_argument);
}

TEST_CASE("witness with d=1 reproduces a deterministic density") {
  SyncGame g = iso_game(cycle_graph(5), cycle_graph(5));
  auto h = perfect_deterministic_search(g);
  REQUIRE(h.has_value());
  QuantumWitness w = QuantumWitness::zeros(1, g.num_inputs(), g.num_outputs());
  for (std::size_t v = 0; v < g.num_inputs(); ++v) w.at(v, (*h)[v])(0, 0) = 1;
  CHECK(w.invariant_residual() < 1e-15);
  CondProb p = strategy_from_witness(w, g);
  CHECK(p.valid());
  CHECK(is_perfect_strategy(p, g));
  CondProb point = CondProb::point_mass(g, *h);
  for (std::size_t v = 0; v < g.num_inputs(); ++v)
    for (std::size_t ww = 0; ww < g.num_inputs(); ++ww)
      for (std::size_t a = 0; a < g.num_outputs(); ++a)
        for (std::size_t b = 0; b < g.num_outputs(); ++b)
          CHECK(p.at(a, b, v, ww) == doctest::Approx(point.at(a, b, v, ww)));
}

TEST_CASE("witness densities are symmetric and row-normalized") {
  // two projections summing to the identity on C^2, used as a 1-input game
  SyncGame g({"v", "w"}, {"0", "1"}, [](std::size_t v, std::size_t w, std::size_t a, std::size_t b) {
    return v != w || a == b;
  });
  QuantumWitness wit = QuantumWitness::zeros(2, 2, 2);
  // E_{v,0/1}: spectral projections of Pauli Z; E_{w,0/1}: of Pauli X
  wit.at(0, 0)(0, 0) = 1;
  wit.at(0, 1)(1, 1) = 1;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) wit.at(1, a)(i, j) = (i == j ? 0.5 : (a == 0 ? 0.5 : -0.5));
  CHECK(wit.invariant_residual() < 1e-12);
  CondProb p = strategy_from_witness(wit, g);
  CHECK(p.valid(1e-12));
  for (std::size_t v = 0; v < 2; ++v)
    for (std::size_t w = 0; w < 2; ++w)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          CHECK(p.at(a, b, v, w) == doctest::Approx(p.at(b, a, w, v)));
}

TEST_CASE("witness invariant violations are rejected") {
  SyncGame g = hom_game(complete_graph(2), complete_graph(2));
  QuantumWitness w = QuantumWitness::zeros(2, g.num_inputs(), g.num_outputs());
  w.at(0, 0)(0, 0) = 0.7;  // not a projection
  w.at(0, 1)(1, 1) = 1.0;
  w.at(1, 0)(0, 0) = 1.0;
  w.at(1, 1)(1, 1) = 1.0;
  CHECK_THROWS_AS(strategy_from_witness(w, g), std::invalid_argument);
}

TEST_CASE("magic unitary witness verification") {
  Graph c5 = cycle_graph(5);
  QuantumWitness ident = QuantumWitness::zeros(1, 5, 5);
  for (std::size_t v = 0; v < 5; ++v) ident.at(v, v)(0, 0) = 1;
  MagicUnitaryReport rep = verify_magic_unitary_witness(ident, c5, c5);
  CHECK(rep.pass);
  CHECK(rep.max_residual() == 0.0);

  // same identity pattern cannot intertwine K3 with its complement
  Graph k3 = complete_graph(3);
  QuantumWitness id3 = QuantumWitness::zeros(1, 3, 3);
  for (std::size_t v = 0; v < 3; ++v) id3.at(v, v)(0, 0) = 1;
  MagicUnitaryReport bad = verify_magic_unitary_witness(id3, k3, complement(k3));
  CHECK(!bad.pass);
  CHECK(bad.row_sum_residual < 1e-15);
  CHECK(bad.col_sum_residual < 1e-15);
  CHECK(bad.intertwine_residual > 0.5);

  CHECK_THROWS_AS(verify_magic_unitary_witness(ident, k3, k3), std::invalid_argument);
}

TEST_CASE("predicate table size cap") {
  auto always = [](std::size_t, std::size_t, std::size_t, std::size_t) { return true; };
  std::vector<std::string> ins(60), outs(60);
  for (int i = 0; i < 60; ++i) ins[i] = outs[i] = std::to_string(i);
  CHECK_THROWS_AS(SyncGame(ins, outs, always), std::invalid_argument);
}
