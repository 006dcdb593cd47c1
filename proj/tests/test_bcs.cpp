#include <random>
#include <set>

#include "doctest.h"
#include "syncgame/bcs.hpp"
#include "syncgame/game.hpp"
#include "syncgame/graph_iso.hpp"

using namespace syncgame;

namespace {

// all 2^n assignments, the lazy way
bool brute_force_solvable(const LinearSystemZ2& sys) {
  for (std::uint32_t x = 0; x < (1u << sys.n); ++x) {
    bool ok = true;
    for (std::size_t i = 0; i < sys.m && ok; ++i)
      if (parity(x & sys.rows[i]) != (sys.rhs(i) ? 1 : 0)) ok = false;
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("solution sets") {
  LinearSystemZ2 sys(1, 2, {0b11}, 0);
  SolutionSets ss = solution_sets(sys);
  CHECK(ss.solutions[0] == std::vector<std::uint32_t>{0b00, 0b11});

  LinearSystemZ2 one_var(1, 3, {0b010}, 1);
  CHECK(solution_sets(one_var).solutions[0] == std::vector<std::uint32_t>{0b010});

  LinearSystemZ2 ms = magic_square_instance();
  SolutionSets mss = solution_sets(ms);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(mss.solutions[i].size() == 4);
    CHECK(mss.solutions[i].size() == (1u << (mss.supports[i].size() - 1)));
  }
}

TEST_CASE("|S_i^b| = 2^(|V_i|-1) on random systems") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + rng() % 6;
    std::uint32_t row = 1 + rng() % ((1u << n) - 1);
    LinearSystemZ2 sys(1, n, {row}, rng() % 2);
    SolutionSets ss = solution_sets(sys);
    CHECK(ss.solutions[0].size() == (1u << (ss.supports[0].size() - 1)));
  }
}

TEST_CASE("sync bcs game basics") {
  LinearSystemZ2 solvable(1, 2, {0b11}, 0);
  CHECK(perfect_deterministic_search(sync_bcs_game(solvable)).has_value());

  SyncGame ms_game = sync_bcs_game(magic_square_instance());
  CHECK(ms_game.num_inputs() == 6);
  CHECK(ms_game.is_synchronous());
  CHECK(!perfect_deterministic_search(ms_game).has_value());
  CHECK(!brute_force_solvable(magic_square_instance()));
}

TEST_CASE("graph of system") {
  LinearSystemZ2 tiny(1, 2, {0b11}, 0);
  Graph g = graph_of_system(tiny);
  CHECK(g.n() == 2);
  CHECK(g.edge_count() == 1);

  Graph ms = graph_of_system(magic_square_instance());
  CHECK(ms.n() == 24);
  for (std::size_t v = 0; v < ms.n(); ++v) CHECK(ms.degree(v) == 9);

  // zero solutions across disjoint rows are never adjacent
  LinearSystemZ2 disjoint(2, 4, {0b0011, 0b1100}, 0);
  Graph gd = graph_of_system(disjoint);
  BcsVertexTable t = bcs_vertex_table(disjoint);
  CHECK(!gd.adjacent(t.index_of(0, 0), t.index_of(1, 0)));
}

TEST_CASE("classical solvability with certificates") {
  auto ms = is_classically_solvable(magic_square_instance());
  CHECK(!ms.solution.has_value());
  // the recorded row combination really sums to 0 = 1
  LinearSystemZ2 sys = magic_square_instance();
  std::uint32_t lhs = 0;
  int rhs = 0;
  for (auto i : ms.certificate_rows) {
    lhs ^= sys.rows[i];
    rhs ^= sys.rhs(i) ? 1 : 0;
  }
  CHECK(lhs == 0);
  CHECK(rhs == 1);
  CHECK(ms.certificate_rows.size() == 6);  // the all-rows parity argument

  auto solved = is_classically_solvable(LinearSystemZ2(1, 2, {0b11}, 1));
  REQUIRE(solved.solution.has_value());
  CHECK(*solved.solution == 0b01);  // x_0 = 1, x_1 = 0
  CHECK(bit_label(*solved.solution, 2) == "10");

  auto homog = is_classically_solvable(LinearSystemZ2(2, 3, {0b011, 0b110}, 0));
  REQUIRE(homog.solution.has_value());
  CHECK(*homog.solution == 0);
}

TEST_CASE("solvable iff the game has a deterministic strategy (m<=3, n<=4 sample)") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t m = 1 + rng() % 3, n = 1 + rng() % 4;
    std::vector<std::uint32_t> rows;
    for (std::size_t i = 0; i < m; ++i) rows.push_back(1 + rng() % ((1u << n) - 1));
    LinearSystemZ2 sys(m, n, rows, rng() % (1u << m));
    bool solvable = is_classically_solvable(sys).solution.has_value();
    CHECK(solvable == brute_force_solvable(sys));
    CHECK(solvable == perfect_deterministic_search(sync_bcs_game(sys)).has_value());
  }
}

TEST_CASE("row-shift bijection between S_i^0 and S_i^b") {
  LinearSystemZ2 sys(2, 3, {0b011, 0b110}, 0b10);
  LinearSystemZ2 hom = sys.homogeneous();
  SolutionSets sb = solution_sets(sys), s0 = solution_sets(hom);
  CHECK(graph_of_system(sys).n() == graph_of_system(hom).n());
  for (std::size_t i = 0; i < sys.m; ++i) {
    std::uint32_t x0 = sb.solutions[i][0];
    std::set<std::uint32_t> shifted;
    for (auto y : s0.solutions[i]) shifted.insert(x0 ^ y);
    CHECK(shifted == std::set<std::uint32_t>(sb.solutions[i].begin(), sb.solutions[i].end()));
  }
}

TEST_CASE("magic square witness is a perfect quantum strategy") {
  LinearSystemZ2 sys = magic_square_instance();
  SyncGame game = sync_bcs_game(sys);
  QuantumWitness w = magic_square_witness();
  CHECK(w.d == 4);
  CHECK(w.invariant_residual() < 1e-12);

  SolutionSets ss = solution_sets(sys);
  // each nonzero projection has rank one: trace 1
  for (std::size_t i = 0; i < sys.m; ++i) {
    std::size_t nonzero = 0;
    for (std::size_t a = 0; a < game.num_outputs(); ++a) {
      const CMat& e = w.at(i, a);
      Complex tr = 0;
      for (std::size_t k = 0; k < 4; ++k) tr += e(k, k);
      if (e.frobenius_norm() > 1e-12) {
        ++nonzero;
        CHECK(tr.real() == doctest::Approx(1.0));
      }
    }
    CHECK(nonzero == ss.solutions[i].size());
  }

  CondProb p = strategy_from_witness(w, game);
  CHECK(p.valid(1e-9));
  CHECK(is_perfect_strategy(p, game, 1e-9));
}

TEST_CASE("pushed-forward iso witness certifies G_Ab ~ G_A0") {
  LinearSystemZ2 sys = magic_square_instance();
  Graph gb = graph_of_system(sys);
  Graph g0 = graph_of_system(sys.homogeneous());
  QuantumWitness w = magic_square_iso_witness();
  MagicUnitaryReport rep = verify_magic_unitary_witness(w, gb, g0, 1e-10);
  CHECK(rep.pass);
  CHECK(rep.max_residual() < 1e-10);
}

TEST_CASE("iso-game reindexing of the passing witness is a perfect strategy") {
  LinearSystemZ2 sys = magic_square_instance();
  Graph gb = graph_of_system(sys);
  Graph g0 = graph_of_system(sys.homogeneous());
  QuantumWitness w = magic_square_iso_witness();
  REQUIRE(verify_magic_unitary_witness(w, gb, g0, 1e-10).pass);

  SyncGame game = iso_game(gb, g0);
  const std::size_t n = gb.n();
  QuantumWitness e = QuantumWitness::zeros(w.d, game.num_inputs(), game.num_outputs());
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      e.at(p, n + q) = w.at(p, q);  // X-side inputs answer in Y
      e.at(n + q, p) = w.at(p, q);  // and conversely
    }
  CHECK(e.invariant_residual() < 1e-10);
  CondProb strat = strategy_from_witness(e, game);
  CHECK(strat.valid(1e-9));
  CHECK(is_perfect_strategy(strat, game, 1e-9));
}

TEST_CASE("system file format") {
  LinearSystemZ2 sys = magic_square_instance();
  LinearSystemZ2 back = LinearSystemZ2::parse(sys.serialize());
  CHECK(back.rows == sys.rows);
  CHECK(back.b == sys.b);
  CHECK_THROWS_AS(LinearSystemZ2::parse("2 2\n11\n"), std::invalid_argument);
  CHECK_THROWS_AS(LinearSystemZ2::parse("1 2\n00\n0\n"), std::invalid_argument);  // empty row
  CHECK_THROWS_AS(LinearSystemZ2::parse("1 2\n12\n0\n"), std::invalid_argument);
}
