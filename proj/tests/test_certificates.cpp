#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "syncgame/certificates.hpp"
#include "syncgame/game_algebra.hpp"
#include "syncgame/graph.hpp"

using namespace syncgame;

TEST_CASE("frucht graph is certified to have a trivial quantum automorphism group") {
  CertificateReport rep = classical_qaut_certificate(frucht());
  CHECK(rep.verdict == QautVerdict::TrivialQAut);
  CHECK(rep.simple_spectrum);
  CHECK(rep.supports_ok);
  CHECK(rep.ambiguous_entries == 0);
  CHECK(rep.support_margin > 1e-6);
  CHECK(rep.eigenvalues.size() == 12);
  CHECK(rep.min_eigenvalue_gap > 1e-3);
  CHECK(rep.aut_order == BigInt(1));
}

TEST_CASE("jacobi eigenvalues match the exact characteristic polynomial") {
  for (int seed = 0; seed < 10; ++seed) {
    Graph g = oracle::random_graph(6 + seed % 4, 0.4, 900 + seed);
    auto eig = detail::jacobi_eigen(g);
    CharPoly p = char_poly(g);
    for (double lambda : eig.values) {
      // |p(lambda)| should be tiny relative to the derivative scale
      double value = 0, x = 1;
      for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
        value += p.coeffs[k].to_double() * x;
        x *= lambda;
      }
      CHECK(std::abs(value) < 1e-6);
    }
    // eigenvectors expose A v = lambda v
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
      double worst = 0;
      for (std::size_t i = 0; i < g.n(); ++i) {
        double av = 0;
        for (std::size_t j = 0; j < g.n(); ++j)
          if (g.adjacent(i, j)) av += eig.vectors[k][j];
        worst = std::max(worst, std::abs(av - eig.values[k] * eig.vectors[k][i]));
      }
      CHECK(worst < 1e-8);
    }
  }
}

TEST_CASE("repeated spectrum stays inconclusive without touching floats") {
  CertificateReport rep = classical_qaut_certificate(complete_graph(3));
  CHECK(rep.verdict == QautVerdict::Inconclusive);
  CHECK(!rep.simple_spectrum);
  CHECK(rep.eigenvalues.empty());  // the float stage never ran
}

TEST_CASE("vertex-transitive graphs with simple spectrum stay classical but not trivial") {
  // P2 = K2 has simple spectrum and Aut of order 2
  CertificateReport rep = classical_qaut_certificate(complete_graph(2));
  CHECK(rep.simple_spectrum);
  CHECK(rep.verdict == QautVerdict::CertifiedClassicalQAut);
  CHECK(rep.aut_order == BigInt(2));
}

TEST_CASE("degree obstruction") {
  DegreeObstruction bad = degree_obstruction(complete_graph(3), complement(complete_graph(3)));
  CHECK(bad.refuted);

  Graph g = oracle::random_graph(6, 0.5, 42);
  DegreeObstruction self = degree_obstruction(g, g);
  CHECK(!self.refuted);
  std::size_t total = 0;
  for (const auto& [deg, cls] : self.blocks) {
    CHECK(cls.first == cls.second);
    total += cls.first.size();
  }
  CHECK(total == 6);
}

TEST_CASE("degree obstruction refutation collapses the Iso algebra at degree 3") {
  // cross-module consistency: refuted degree multiset => TrivialCertified
  std::vector<std::pair<Graph, Graph>> pairs;
  pairs.emplace_back(complete_graph(3), complement(complete_graph(3)));
  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  pairs.emplace_back(complete_graph(3), p3);
  Graph star4(4);
  star4.add_edge(0, 1);
  star4.add_edge(0, 2);
  star4.add_edge(0, 3);
  pairs.emplace_back(cycle_graph(4), star4);
  int tested = 0;
  for (std::uint64_t seed = 0; tested < 25 && seed < 2000; ++seed) {
    std::size_t n = 2 + seed % 4;
    Graph x = oracle::random_graph(n, 0.45, seed * 3 + 1);
    Graph y = oracle::random_graph(n, 0.55, seed * 7 + 2);
    if (!degree_obstruction(x, y).refuted) continue;
    pairs.emplace_back(std::move(x), std::move(y));
    ++tested;
  }
  CHECK(tested == 25);
  for (const auto& [x, y] : pairs) {
    REQUIRE(degree_obstruction(x, y).refuted);
    TrivialityResult res = triviality_status(iso_algebra(x, y).pres, 3);
    CHECK(res.kind == TrivialityResult::Kind::TrivialCertified);
    CHECK(expand_combination(iso_algebra(x, y).pres, res.certificate) == NCPoly::one());
  }
}

TEST_CASE("isospectrality obstruction") {
  CHECK(isospectrality_obstruction(complete_graph(4), cycle_graph(4)).refuted);
  auto [g1, g2] = gm_switch(frucht(), {0, 1, 2, 3, 4, 5});
  CHECK(!isospectrality_obstruction(g1, g2).refuted);
}

TEST_CASE("niso pipeline, default subset") {
  NisoReport rep = niso_pipeline();
  CHECK(rep.isospectral);
  CHECK(!rep.isomorphic);
  CHECK(rep.aut_order_x1 == BigInt(1));
  CHECK(rep.aut_order_x2 == BigInt(1));
  CHECK(!rep.degrees.refuted);
  CHECK(rep.new_vertex_isolated);
  CHECK(rep.frucht_certificate.verdict == QautVerdict::TrivialQAut);

  // the added vertex has degree 6; the base splits into six 4s and six 3s
  CHECK(rep.x1.degree(12) == 6);
  std::size_t deg3 = 0, deg4 = 0;
  for (std::size_t v = 0; v < 12; ++v) {
    if (rep.x1.degree(v) == 3) ++deg3;
    if (rep.x1.degree(v) == 4) ++deg4;
  }
  CHECK(deg3 == 6);
  CHECK(deg4 == 6);
}

TEST_CASE("niso isospectrality holds for 100 random subsets") {
  std::mt19937_64 rng(99);
  Graph base = frucht();
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::size_t> all{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::size_t> subset(all.begin(), all.begin() + 6);
    if (trial % 10 == 0) {
      NisoReport rep = niso_pipeline(subset);
      CHECK(rep.isospectral);
    } else {
      auto [g1, g2] = gm_switch(base, subset);
      CHECK(is_isospectral(g1, g2));
    }
  }
}

TEST_CASE("niso pipeline rejects bad subsets") {
  CHECK_THROWS_AS(niso_pipeline(std::vector<std::size_t>{0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(niso_pipeline(std::vector<std::size_t>{0, 1, 2, 3, 4, 12}), std::invalid_argument);
}
