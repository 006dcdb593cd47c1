#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "syncgame/bcs.hpp"
#include "syncgame/certificates.hpp"
#include "syncgame/game.hpp"
#include "syncgame/game_algebra.hpp"
#include "syncgame/quantum_graph.hpp"
#include "syncgame/rewrite.hpp"

namespace syncgame {

using Json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

// --- graphs ------------------------------------------------------------

inline Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return Json{{"n", g.n()}, {"edges", edges}};
}

inline Graph graph_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("edges")) throw std::invalid_argument("graph json: need n and edges");
  Graph g(j.at("n").get<std::size_t>());
  std::size_t idx = 0;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph json: edge " + std::to_string(idx) + " is not a pair");
    long long u = e[0].get<long long>(), v = e[1].get<long long>();
    if (u < 0 || v < 0 || u >= static_cast<long long>(g.n()) || v >= static_cast<long long>(g.n()))
      throw std::invalid_argument("graph json: edge " + std::to_string(idx) + " out of range");
    if (u == v) throw std::invalid_argument("graph json: edge " + std::to_string(idx) + " is a self-loop");
    if (g.adjacent(u, v)) throw std::invalid_argument("graph json: edge " + std::to_string(idx) + " repeated");
    g.add_edge(u, v);
    ++idx;
  }
  return g;
}

// accepts either the JSON mirror or the "n m" edge-list text
inline Graph load_graph(const std::string& path) {
  std::string text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return graph_from_json(Json::parse(text));
  return parse_edge_list(text);
}

// --- games -------------------------------------------------------------

inline Json game_to_json(const SyncGame& g) {
  Json zeros = Json::array();
  for (const auto& z : g.zero_cells()) zeros.push_back({z[0], z[1], z[2], z[3]});
  return Json{{"inputs", g.inputs()}, {"outputs", g.outputs()}, {"zeros", zeros}};
}

inline SyncGame game_from_json(const Json& j) {
  auto inputs = j.at("inputs").get<std::vector<std::string>>();
  auto outputs = j.at("outputs").get<std::vector<std::string>>();
  std::set<std::array<std::size_t, 4>> zeros;
  for (const auto& z : j.at("zeros"))
    zeros.insert({z[0].get<std::size_t>(), z[1].get<std::size_t>(), z[2].get<std::size_t>(),
                  z[3].get<std::size_t>()});
  return SyncGame(inputs, outputs, [&](std::size_t v, std::size_t w, std::size_t a, std::size_t b) {
    return zeros.count({v, w, a, b}) == 0;
  });
}

// --- strategies ----------------------------------------------------------

inline Json strategy_to_json(const std::vector<std::size_t>& h) {
  return Json{{"type", "deterministic"}, {"h", h}};
}

// deterministic {"type":"deterministic","h":[...]} or
// {"type":"condprob","p":[v][w][a][b]}
inline CondProb strategy_from_json(const Json& j, const SyncGame& g) {
  std::string type = j.at("type").get<std::string>();
  if (type == "deterministic") {
    auto h = j.at("h").get<std::vector<std::size_t>>();
    if (h.size() != g.num_inputs()) throw std::invalid_argument("strategy json: h length mismatch");
    for (auto a : h)
      if (a >= g.num_outputs()) throw std::invalid_argument("strategy json: output out of range");
    return CondProb::point_mass(g, h);
  }
  if (type == "condprob") {
    const auto& p = j.at("p");
    CondProb cp(g.num_inputs(), g.num_outputs());
    for (std::size_t v = 0; v < g.num_inputs(); ++v)
      for (std::size_t w = 0; w < g.num_inputs(); ++w)
        for (std::size_t a = 0; a < g.num_outputs(); ++a)
          for (std::size_t b = 0; b < g.num_outputs(); ++b)
            cp.at(a, b, v, w) = p.at(v).at(w).at(a).at(b).get<double>();
    return cp;
  }
  throw std::invalid_argument("strategy json: unknown type " + type);
}

// --- witnesses ------------------------------------------------------------

inline Json cmat_to_json(const CMat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline CMat cmat_from_json(const Json& j) {
  std::size_t rows = j.size(), cols = rows ? j.at(0).size() : 0;
  CMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = Complex(j.at(i).at(k).at(0).get<double>(), j.at(i).at(k).at(1).get<double>());
  return m;
}

inline Json witness_to_json(const QuantumWitness& w) {
  Json entries = Json::array();
  for (std::size_t v = 0; v < w.ni; ++v)
    for (std::size_t a = 0; a < w.no; ++a) {
      if (w.at(v, a).all_zero()) continue;
      entries.push_back(Json{{"input", v}, {"output", a}, {"matrix", cmat_to_json(w.at(v, a))}});
    }
  return Json{{"d", w.d}, {"inputs", w.ni}, {"outputs", w.no}, {"entries", entries}};
}

inline QuantumWitness witness_from_json(const Json& j) {
  QuantumWitness w = QuantumWitness::zeros(j.at("d").get<std::size_t>(), j.at("inputs").get<std::size_t>(),
                                           j.at("outputs").get<std::size_t>());
  for (const auto& e : j.at("entries")) {
    CMat m = cmat_from_json(e.at("matrix"));
    if (m.rows() != w.d || m.cols() != w.d) throw std::invalid_argument("witness json: matrix shape mismatch");
    w.at(e.at("input").get<std::size_t>(), e.at("output").get<std::size_t>()) = m;
  }
  return w;
}

// --- quantum graphs ---------------------------------------------------------

inline Json qgraph_to_json(const QuantumGraph& qg) {
  Json weights = Json::array();
  for (std::size_t i = 0; i < qg.qset.blocks().size(); ++i) {
    const CMat& q = qg.qset.weights()[i];
    Json flat = Json::array();
    for (std::size_t r = 0; r < q.rows(); ++r)
      for (std::size_t c = 0; c < q.cols(); ++c) flat.push_back({q(r, c).real(), q(r, c).imag()});
    weights.push_back(flat);
  }
  CMat a_onb = to_onb_matrix(qg);
  Json a = Json::array();
  for (std::size_t r = 0; r < a_onb.rows(); ++r)
    for (std::size_t c = 0; c < a_onb.cols(); ++c) a.push_back({a_onb(r, c).real(), a_onb(r, c).imag()});
  return Json{{"blocks", qg.qset.blocks()}, {"weights", weights}, {"A", a}};
}

inline QuantumGraph qgraph_from_json(const Json& j) {
  if (j.contains("n") && j.contains("edges")) return from_classical(graph_from_json(j));  // auto-promotion
  auto blocks = j.at("blocks").get<std::vector<std::size_t>>();
  std::vector<CMat> weights;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& flat = j.at("weights").at(i);
    if (flat.size() != blocks[i] * blocks[i])
      throw std::invalid_argument("quantum graph json: weight size mismatch on block " + std::to_string(i));
    CMat q(blocks[i], blocks[i]);
    for (std::size_t r = 0; r < blocks[i]; ++r)
      for (std::size_t c = 0; c < blocks[i]; ++c) {
        const auto& z = flat.at(r * blocks[i] + c);
        q(r, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
      }
    weights.push_back(std::move(q));
  }
  QuantumSet qs = QuantumSet::with_weights(blocks, weights);
  std::size_t d = qs.dim();
  const auto& aflat = j.at("A");
  if (aflat.size() != d * d) throw std::invalid_argument("quantum graph json: A must have d^2 entries");
  CMat a(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      a(r, c) = Complex(aflat.at(r * d + c).at(0).get<double>(), aflat.at(r * d + c).at(1).get<double>());
  return from_onb_matrix(qs, a);
}

// classical edge lists and graph JSON are auto-promoted
inline QuantumGraph load_qgraph(const std::string& path) {
  std::string text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j = Json::parse(text);
    return qgraph_from_json(j);
  }
  return from_classical(parse_edge_list(text));
}

// --- reports -----------------------------------------------------------------

inline Json axiom_report_to_json(const AxiomReport& rep) {
  return Json{{"exact", rep.exact_path},
              {"pass", rep.pass},
              {"schur_idempotent_residual", rep.schur_idempotent},
              {"symmetry_residual", rep.symmetry},
              {"reflexivity_residual", rep.reflexive},
              {"self_adjoint_residual", rep.self_adjoint},
              {"tolerance", rep.tolerance}};
}

inline Json magic_report_to_json(const MagicUnitaryReport& rep) {
  return Json{{"pass", rep.pass},
              {"projection_residual", rep.projection_residual},
              {"row_sum_residual", rep.row_sum_residual},
              {"col_sum_residual", rep.col_sum_residual},
              {"row_orth_residual", rep.row_orth_residual},
              {"col_orth_residual", rep.col_orth_residual},
              {"intertwine_residual", rep.intertwine_residual},
              {"tolerance", rep.tolerance}};
}

inline Json bigint_to_json(const BigInt& v) {
  if (v.fits_int64()) return Json(v.to_int64());
  return Json(v.to_string());
}

inline Json cert_report_to_json(const CertificateReport& rep) {
  Json j{{"verdict", to_string(rep.verdict)},
         {"reason", rep.reason},
         {"simple_spectrum", rep.simple_spectrum},
         {"supports_ok", rep.supports_ok}};
  if (rep.simple_spectrum) {
    j["eigenvalues"] = rep.eigenvalues;
    j["min_eigenvalue_gap"] = rep.min_eigenvalue_gap;
    j["support_margin"] = rep.support_margin;
    j["ambiguous_entries"] = rep.ambiguous_entries;
  }
  if (rep.verdict == QautVerdict::TrivialQAut || rep.verdict == QautVerdict::CertifiedClassicalQAut)
    j["aut_order"] = bigint_to_json(rep.aut_order);
  return j;
}

inline Json degree_obstruction_to_json(const DegreeObstruction& d) {
  Json blocks = Json::array();
  for (const auto& [deg, cls] : d.blocks)
    blocks.push_back(Json{{"degree", deg}, {"x_vertices", cls.first}, {"y_vertices", cls.second}});
  return Json{{"verdict", d.refuted ? "Refuted" : "BlockPartition"}, {"blocks", blocks}};
}

inline Json niso_to_json(const NisoReport& rep) {
  return Json{{"subset", rep.subset},
              {"isospectral", rep.isospectral},
              {"isomorphic", rep.isomorphic},
              {"aut_orders", Json::array({bigint_to_json(rep.aut_order_x1), bigint_to_json(rep.aut_order_x2)})},
              {"degree_obstruction", degree_obstruction_to_json(rep.degrees)},
              {"new_vertex_isolated", rep.new_vertex_isolated},
              {"frucht_certificate", cert_report_to_json(rep.frucht_certificate)}};
}

inline Json hom_report_to_json(const HomReport& rep, const Alphabet& src, const Alphabet& dst) {
  Json checks = Json::array();
  for (const auto& c : rep.checks)
    checks.push_back(Json{{"relation", c.relation.to_string(src)},
                          {"image", c.image.to_string(dst)},
                          {"residual_terms", c.residual.term_count()},
                          {"residual", c.residual.to_string(dst)}});
  return Json{{"pass", rep.pass}, {"checks", checks}};
}

inline Json triviality_to_json(const TrivialityResult& res, const Presentation& pres) {
  Json j{{"verdict", res.verdict_string()}, {"degree", res.degree},
         {"saturated", res.system.saturated}, {"rules", res.system.rules.size()}};
  if (res.kind == TrivialityResult::Kind::TrivialCertified) {
    Json cert = Json::array();
    for (const auto& t : res.certificate) {
      Word lw = t.left, rw = t.right;
      cert.push_back(Json{{"coef", t.coef.to_string()},
                          {"left", NCPoly::monomial(lw, Rational(1)).to_string(pres.alphabet)},
                          {"relation", t.target},
                          {"right", NCPoly::monomial(rw, Rational(1)).to_string(pres.alphabet)}});
    }
    j["certificate"] = cert;
    j["certificate_terms"] = res.certificate.size();
  }
  if (res.kind == TrivialityResult::Kind::NontrivialCertified) {
    Json w = Json::object();
    for (const auto& [l, v] : res.witness) w[pres.alphabet.name(l)] = v.to_string();
    j["witness"] = w;
  }
  return j;
}

// cached rewrite systems: enough to replay reductions, certificates dropped
inline Json rewrite_system_to_json(const RewriteSystem& rs) {
  Json letters = Json::array(), star = Json::array();
  for (std::size_t l = 0; l < rs.alphabet.size(); ++l) {
    letters.push_back(rs.alphabet.name(static_cast<Letter>(l)));
    star.push_back(rs.alphabet.star(static_cast<Letter>(l)));
  }
  Json rules = Json::array();
  for (const auto& r : rs.rules) {
    Json terms = Json::array();
    for (const auto& [w, c] : r.rhs.terms()) terms.push_back(Json{{"coef", c.to_string()}, {"word", w}});
    rules.push_back(Json{{"lhs", r.lhs}, {"rhs", terms}});
  }
  return Json{{"order", "deglex"},        {"letters", letters},
              {"star", star},             {"degree_bound", rs.degree_bound},
              {"complete_up_to", rs.complete_up_to}, {"saturated", rs.saturated},
              {"cap_exceeded", rs.cap_exceeded},     {"rules", rules}};
}

inline RewriteSystem rewrite_system_from_json(const Json& j) {
  RewriteSystem rs;
  auto letters = j.at("letters").get<std::vector<std::string>>();
  auto star = j.at("star").get<std::vector<Letter>>();
  for (std::size_t l = 0; l < letters.size(); ++l) {
    if (star[l] == static_cast<Letter>(l))
      rs.alphabet.add_selfadjoint(letters[l]);
    else if (star[l] == static_cast<Letter>(l + 1))
      rs.alphabet.add_pair(letters[l]);
  }
  if (rs.alphabet.size() != letters.size()) throw std::invalid_argument("rewrite json: bad star table");
  rs.degree_bound = j.at("degree_bound").get<std::size_t>();
  rs.complete_up_to = j.at("complete_up_to").get<std::size_t>();
  rs.saturated = j.at("saturated").get<bool>();
  rs.cap_exceeded = j.at("cap_exceeded").get<bool>();
  for (const auto& rj : j.at("rules")) {
    RewriteRule r;
    r.lhs = rj.at("lhs").get<Word>();
    for (const auto& t : rj.at("rhs"))
      r.rhs.add_term(t.at("word").get<Word>(), Rational::from_string(t.at("coef").get<std::string>()));
    r.id = rs.archive.size();
    rs.archive.push_back(r);
    rs.rules.push_back(std::move(r));
  }
  rs.rebuild_index();
  return rs;
}

// image map text: one line per base generator, "name := expr" with expr over
// the target alphabet
inline std::map<Letter, NCPoly> parse_image_map(const Presentation& src, const Presentation& dst,
                                                const std::string& text) {
  std::map<Letter, NCPoly> images;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    auto sep = line.find(":=");
    if (sep == std::string::npos)
      throw std::invalid_argument("map line " + std::to_string(lineno) + ": expected name := expr");
    std::string name = line.substr(0, sep);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    Letter l = src.alphabet.find(name);
    if (l < 0) throw std::invalid_argument("map line " + std::to_string(lineno) + ": unknown source generator " + name);
    // reuse the presentation parser against the target alphabet
    Presentation tmp;
    tmp.alphabet = dst.alphabet;
    images[l] = detail::PresParser(line.substr(sep + 2)).parse_single(tmp);
  }
  return images;
}

}  // namespace syncgame
