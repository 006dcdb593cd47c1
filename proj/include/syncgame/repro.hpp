#pragma once

// One-shot reproductions of the named constructions: the Frucht
// certificate, the switching example, the magic-square pipeline, and the
// three-way game equivalence. Shared by the CLI and the acceptance suite.

#include <optional>

#include "syncgame/config.hpp"
#include "syncgame/json_io.hpp"

namespace syncgame {

inline Json repro_frucht(const Config& cfg = {}) {
  Graph f = frucht();
  CertificateReport rep = classical_qaut_certificate(f, cfg.support_eps);
  Json j = cert_report_to_json(rep);
  j["graph"] = graph_to_json(f);
  j["charpoly"] = char_poly(f).to_string();
  j["aut_order"] = bigint_to_json(automorphism_order(f));
  return j;
}

inline Json repro_niso(std::optional<std::vector<std::size_t>> subset = std::nullopt,
                       const Config& cfg = {}) {
  return niso_to_json(niso_pipeline(std::move(subset), cfg.threads));
}

inline Json repro_magic_square(const Config& cfg = {}) {
  LinearSystemZ2 sys = magic_square_instance();
  Json j;
  j["system"] = sys.serialize();

  Z2SolveResult solved = is_classically_solvable(sys);
  j["classically_solvable"] = solved.solution.has_value();
  j["contradiction_rows"] = solved.certificate_rows;

  Graph gb = graph_of_system(sys);
  Graph g0 = graph_of_system(sys.homogeneous());
  j["graph_vertices"] = gb.n();
  j["graphs_isomorphic"] = is_isomorphic(gb, g0).has_value();
  j["isospectral"] = !isospectrality_obstruction(gb, g0).refuted;

  SyncGame game = sync_bcs_game(sys);
  j["deterministic_strategy"] = perfect_deterministic_search(game).has_value();

  QuantumWitness w = magic_square_witness();
  j["witness_dimension"] = w.d;
  j["witness_residual"] = w.invariant_residual();
  CondProb p = strategy_from_witness(w, game, cfg.tol);
  j["strategy_valid"] = p.valid();
  j["strategy_perfect"] = is_perfect_strategy(p, game);

  QuantumWitness iso_w = magic_square_iso_witness();
  MagicUnitaryReport rep = verify_magic_unitary_witness(iso_w, gb, g0, cfg.tol);
  j["iso_witness"] = magic_report_to_json(rep);
  return j;
}

inline Json repro_equivalence_maps(const LinearSystemZ2& sys, const Config& cfg = {}) {
  std::size_t degree = std::min<std::size_t>(cfg.degree_bound, 4);
  EquivalenceMaps em = equivalence_maps(sys, degree, cfg.rule_cap);
  Json j;
  j["degree_bound"] = degree;
  j["pass"] = em.pass;
  j["closure_fired"] = em.closure_fired;
  j["pi1_iso_to_syncbcs"] = hom_report_to_json(em.pi1, em.iso_alg.pres.alphabet, em.sync_alg.pres.alphabet);
  j["pi2_hom_to_iso"] = hom_report_to_json(em.pi2, em.hom_alg.pres.alphabet, em.iso_alg.pres.alphabet);
  j["pi3_syncbcs_to_hom"] = hom_report_to_json(em.pi3, em.sync_alg.pres.alphabet, em.hom_alg.pres.alphabet);
  std::size_t nonzero = 0;
  for (const auto& c : em.pi3_without_closure.checks)
    if (!c.residual.is_zero()) ++nonzero;
  j["pi3_without_closure_nonzero_residuals"] = nonzero;
  return j;
}

}  // namespace syncgame
