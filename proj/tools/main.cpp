// syncgame: build synchronous games and their *-algebras, test collapse by
// degree-truncated rewriting, verify quantum witnesses, and reproduce the
// named graph constructions. JSON on stdout is the machine contract; errors
// go to stderr as JSON with a nonzero exit code.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "syncgame/config.hpp"
#include "syncgame/json_io.hpp"
#include "syncgame/repro.hpp"

using namespace syncgame;

namespace {

void emit(const Json& j, const Config& cfg) {
  if (cfg.format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  // advisory text rendering: flattened key lines
  std::function<void(const Json&, const std::string&)> walk = [&](const Json& node, const std::string& prefix) {
    if (node.is_object()) {
      for (auto it = node.begin(); it != node.end(); ++it)
        walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    } else if (node.is_array() && node.size() > 8) {
      std::cout << prefix << ": [" << node.size() << " entries]\n";
    } else {
      std::cout << prefix << ": " << node.dump() << "\n";
    }
  };
  walk(j, "");
}

GameAlgebra load_algebra_for_game(const std::string& kind, const std::vector<std::string>& files,
                                  bool full) {
  if (kind == "iso") {
    Graph x = load_graph(files.at(0)), y = load_graph(files.at(1));
    return full ? algebra_of_game(iso_game(x, y), false) : iso_algebra(x, y);
  }
  if (kind == "hom") return algebra_of_game(hom_game(load_graph(files.at(0)), load_graph(files.at(1))));
  if (kind == "syncbcs") return algebra_of_game(sync_bcs_game(LinearSystemZ2::parse(read_file(files.at(0)))));
  throw std::invalid_argument("unknown algebra kind: " + kind);
}

std::vector<std::size_t> parse_subset(const std::string& csv) {
  std::vector<std::size_t> subset;
  std::istringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ',')) subset.push_back(std::stoul(tok));
  return subset;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synchronous games, game *-algebras and quantum graph certificates"};
  app.require_subcommand(1);

  Config cfg;
  try {
    cfg = Config::from_environment();
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  app.add_option("--degree", cfg.degree_bound, "completion degree bound");
  app.add_option("--rule-cap", cfg.rule_cap, "completion rule cap");
  app.add_option("--tol", cfg.tol, "numeric tolerance");
  app.add_option("--support-eps", cfg.support_eps, "eigenvector support threshold");
  app.add_option("--threads", cfg.threads, "worker threads");
  app.add_option("--format", cfg.format, "output format: json or text");

  std::string file1, file2, file3, kind, subset_csv;
  bool full_presentation = false;
  std::size_t degree_override = 0;
  std::string out_path, character_out;

  // graph ------------------------------------------------------------
  auto* graph_cmd = app.add_subcommand("graph", "classical graph operations");
  graph_cmd->require_subcommand(1);
  auto* g_info = graph_cmd->add_subcommand("info", "order, degrees, edges");
  g_info->add_option("file", file1)->required();
  auto* g_charpoly = graph_cmd->add_subcommand("charpoly", "exact characteristic polynomial");
  g_charpoly->add_option("file", file1)->required();
  auto* g_aut = graph_cmd->add_subcommand("aut", "automorphism group order");
  g_aut->add_option("file", file1)->required();
  auto* g_iso = graph_cmd->add_subcommand("iso", "exact isomorphism test");
  g_iso->add_option("file", file1)->required();
  g_iso->add_option("file2", file2)->required();

  // qgraph -----------------------------------------------------------
  auto* qgraph_cmd = app.add_subcommand("qgraph", "quantum graph operations");
  qgraph_cmd->require_subcommand(1);
  auto* q_check = qgraph_cmd->add_subcommand("check", "verify the quantum adjacency axioms");
  q_check->add_option("file", file1)->required();
  auto* q_fromcls = qgraph_cmd->add_subcommand("from-classical", "promote a classical graph");
  q_fromcls->add_option("file", file1)->required();

  // game ---------------------------------------------------------------
  auto* game_cmd = app.add_subcommand("game", "synchronous games");
  game_cmd->require_subcommand(1);
  auto* game_build = game_cmd->add_subcommand("build", "build hom/iso/syncbcs games");
  game_build->add_option("kind", kind, "hom | iso | syncbcs")->required();
  game_build->add_option("file", file1)->required();
  game_build->add_option("file2", file2);
  game_build->add_option("-o,--out", out_path, "write the game JSON here");
  auto* game_solve = game_cmd->add_subcommand("solve", "search for a deterministic strategy");
  game_solve->add_option("file", file1)->required();
  auto* game_verify = game_cmd->add_subcommand("verify-strategy", "check a strategy file");
  game_verify->add_option("game", file1)->required();
  game_verify->add_option("strategy", file2)->required();

  // algebra ------------------------------------------------------------
  auto* alg_cmd = app.add_subcommand("algebra", "game *-algebras and rewriting");
  alg_cmd->require_subcommand(1);
  auto* alg_build = alg_cmd->add_subcommand("build", "emit a presentation");
  alg_build->add_option("kind", kind, "iso | hom | syncbcs")->required();
  alg_build->add_option("file", file1)->required();
  alg_build->add_option("file2", file2);
  alg_build->add_flag("--full", full_presentation, "full game presentation for iso");
  alg_build->add_option("-o,--out", out_path, "write the presentation here");
  alg_build->add_option("--character-out", character_out,
                        "write the deterministic-strategy character here when one exists");
  auto* alg_triv = alg_cmd->add_subcommand("triviality", "semidecide collapse");
  alg_triv->add_option("file", file1)->required();
  alg_triv->add_option("--degree", degree_override, "completion degree for this run");
  alg_triv->add_option("--character", file2, "JSON character file certifying nontriviality");
  auto* alg_verify = alg_cmd->add_subcommand("verify-hom", "verify a generator map");
  alg_verify->add_option("src", file1)->required();
  alg_verify->add_option("dst", file2)->required();
  alg_verify->add_option("map", file3)->required();

  // witness ------------------------------------------------------------
  auto* wit_cmd = app.add_subcommand("witness", "finite-dimensional strategy witnesses");
  wit_cmd->require_subcommand(1);
  auto* wit_verify = wit_cmd->add_subcommand("verify", "magic-unitary witness against two graphs");
  wit_verify->add_option("witness", file1)->required();
  wit_verify->add_option("x", file2)->required();
  wit_verify->add_option("y", file3)->required();
  auto* wit_magic = wit_cmd->add_subcommand("magic-square", "emit the built-in magic square witness");

  // cert ---------------------------------------------------------------
  auto* cert_cmd = app.add_subcommand("cert", "spectral and degree certificates");
  cert_cmd->require_subcommand(1);
  auto* cert_qaut = cert_cmd->add_subcommand("qaut", "classical quantum automorphism certificate");
  cert_qaut->add_option("file", file1)->required();
  auto* cert_degree = cert_cmd->add_subcommand("degree", "degree obstruction");
  cert_degree->add_option("x", file1)->required();
  cert_degree->add_option("y", file2)->required();
  auto* cert_isosp = cert_cmd->add_subcommand("isospectral", "exact isospectrality test");
  cert_isosp->add_option("x", file1)->required();
  cert_isosp->add_option("y", file2)->required();

  // repro ----------------------------------------------------------------
  auto* repro_cmd = app.add_subcommand("repro", "one-shot reproductions");
  repro_cmd->require_subcommand(1);
  auto* repro_frucht_cmd = repro_cmd->add_subcommand("frucht", "Frucht certificate");
  auto* repro_niso_cmd = repro_cmd->add_subcommand("niso", "isospectral non-isomorphic pair");
  repro_niso_cmd->add_option("--subset", subset_csv, "6 comma-separated Frucht vertices");
  auto* repro_magic_cmd = repro_cmd->add_subcommand("magic-square", "magic square pipeline");
  auto* repro_equiv_cmd = repro_cmd->add_subcommand("equivalence-maps", "three-way game equivalence");
  repro_equiv_cmd->add_option("system", file1)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.validate();
    Json out;

    if (g_info->parsed()) {
      Graph g = load_graph(file1);
      out = graph_to_json(g);
      out["degrees"] = g.degree_sequence();
      out["edge_count"] = g.edge_count();
      out["regular"] = g.is_regular();
    } else if (g_charpoly->parsed()) {
      Graph g = load_graph(file1);
      CharPoly p = char_poly(g);
      Json coeffs = Json::array();
      for (const auto& c : p.coeffs) coeffs.push_back(bigint_to_json(c));
      out = Json{{"charpoly", p.to_string()}, {"coefficients", coeffs},
                 {"simple_spectrum", spectrum_is_simple(g)}};
    } else if (g_aut->parsed()) {
      out = Json{{"aut_order", bigint_to_json(automorphism_order(load_graph(file1)))}};
    } else if (g_iso->parsed()) {
      auto pi = is_isomorphic(load_graph(file1), load_graph(file2));
      out = Json{{"isomorphic", pi.has_value()}};
      if (pi) out["permutation"] = *pi;
    } else if (q_check->parsed()) {
      QuantumGraph qg = load_qgraph(file1);
      auto df = delta_form(qg.qset, cfg.tol);
      out = Json{{"delta", qg.delta.delta}, {"delta_form", df.has_value()},
                 {"axioms", axiom_report_to_json(check_quantum_adjacency(qg, cfg.tol))}};
    } else if (q_fromcls->parsed()) {
      out = qgraph_to_json(from_classical(load_graph(file1)));
    } else if (game_build->parsed()) {
      SyncGame game = [&]() {
        if (kind == "hom") return hom_game(load_graph(file1), load_graph(file2));
        if (kind == "iso") return iso_game(load_graph(file1), load_graph(file2));
        if (kind == "syncbcs") return sync_bcs_game(LinearSystemZ2::parse(read_file(file1)));
        throw std::invalid_argument("unknown game kind: " + kind);
      }();
      out = game_to_json(game);
      if (!out_path.empty()) {
        write_file(out_path, out.dump(2) + "\n");
        out = Json{{"written", out_path}, {"inputs", game.num_inputs()}, {"outputs", game.num_outputs()}};
      }
    } else if (game_solve->parsed()) {
      SyncGame game = game_from_json(Json::parse(read_file(file1)));
      auto h = perfect_deterministic_search(game);
      out = Json{{"has_deterministic_strategy", h.has_value()}};
      if (h) out["strategy"] = strategy_to_json(*h);
    } else if (game_verify->parsed()) {
      SyncGame game = game_from_json(Json::parse(read_file(file1)));
      CondProb p = strategy_from_json(Json::parse(read_file(file2)), game);
      out = Json{{"valid_density", p.valid()}, {"perfect", is_perfect_strategy(p, game)}};
    } else if (alg_build->parsed()) {
      GameAlgebra alg = load_algebra_for_game(kind, {file1, file2}, full_presentation);
      std::string text = to_text(alg.pres);
      if (!character_out.empty()) {
        auto h = perfect_deterministic_search(alg.game);
        if (h) {
          Json ch = Json::object();
          Evaluation ev = alg.reduced_iso
                              ? Evaluation{}
                              : evaluation_from_strategy(alg, *h);
          if (alg.reduced_iso) {
            // reduced Iso generators live on V(x) x V(y): read the
            // permutation off the strategy restricted to the x side
            std::size_t nx = alg.game.num_inputs() / 2;
            std::vector<std::size_t> pi(nx);
            for (std::size_t g = 0; g < nx; ++g) pi[g] = (*h)[g] - nx;
            ev = evaluation_from_permutation(alg, pi);
          }
          for (const auto& [l, v] : ev) ch[alg.pres.alphabet.name(l)] = v.to_string();
          write_file(character_out, ch.dump(2) + "\n");
        }
      }
      if (!out_path.empty()) {
        write_file(out_path, text);
        out = Json{{"written", out_path}, {"generators", alg.pres.alphabet.size()},
                   {"relations", alg.pres.relations.size()}};
      } else {
        std::cout << text;
        return 0;
      }
    } else if (alg_triv->parsed()) {
      Presentation pres = parse_presentation(read_file(file1));
      std::optional<Evaluation> character;
      if (!file2.empty()) {
        Json cj = Json::parse(read_file(file2));
        Evaluation ev;
        for (auto it = cj.begin(); it != cj.end(); ++it) {
          Letter l = pres.alphabet.find(it.key());
          if (l < 0) throw std::invalid_argument("character: unknown generator " + it.key());
          ev[l] = Rational::from_string(it.value().get<std::string>());
        }
        character = ev;
      }
      std::size_t degree = degree_override ? degree_override : cfg.degree_bound;
      TrivialityResult res = triviality_status(pres, degree, character, cfg.rule_cap);
      out = triviality_to_json(res, pres);
    } else if (alg_verify->parsed()) {
      Presentation src = parse_presentation(read_file(file1));
      Presentation dst = parse_presentation(read_file(file2));
      auto images = parse_image_map(src, dst, read_file(file3));
      RewriteSystem rs = complete(dst, cfg.degree_bound, cfg.rule_cap);
      HomReport rep = verify_homomorphism(src, rs, images);
      out = hom_report_to_json(rep, src.alphabet, dst.alphabet);
    } else if (wit_verify->parsed()) {
      QuantumWitness w = witness_from_json(Json::parse(read_file(file1)));
      MagicUnitaryReport rep =
          verify_magic_unitary_witness(w, load_graph(file2), load_graph(file3), cfg.tol);
      out = magic_report_to_json(rep);
    } else if (wit_magic->parsed()) {
      out = witness_to_json(magic_square_witness());
    } else if (cert_qaut->parsed()) {
      out = cert_report_to_json(classical_qaut_certificate(load_graph(file1), cfg.support_eps));
    } else if (cert_degree->parsed()) {
      out = degree_obstruction_to_json(degree_obstruction(load_graph(file1), load_graph(file2)));
    } else if (cert_isosp->parsed()) {
      SpectralObstruction so = isospectrality_obstruction(load_graph(file1), load_graph(file2));
      out = Json{{"verdict", so.refuted ? "Refuted" : "Pass"}, {"isospectral", !so.refuted},
                 {"charpoly_x", so.px.to_string()}, {"charpoly_y", so.py.to_string()}};
    } else if (repro_frucht_cmd->parsed()) {
      out = repro_frucht(cfg);
    } else if (repro_niso_cmd->parsed()) {
      std::optional<std::vector<std::size_t>> subset;
      if (!subset_csv.empty()) subset = parse_subset(subset_csv);
      out = repro_niso(subset, cfg);
    } else if (repro_magic_cmd->parsed()) {
      out = repro_magic_square(cfg);
    } else if (repro_equiv_cmd->parsed()) {
      out = repro_equivalence_maps(LinearSystemZ2::parse(read_file(file1)), cfg);
    }

    emit(out, cfg);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
}
