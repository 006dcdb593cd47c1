#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "syncgame/ncpoly.hpp"

namespace syncgame {

// One summand of a two-sided ideal combination: coef * left * R * right,
// where R is a presentation relation when target >= 0 and the archived rule
// polynomial lhs - rhs of rule ~target when target < 0. Archived rules are
// immutable and only reference strictly earlier entries, so expansion to
// relation level always terminates.
struct IdealTerm {
  Rational coef;
  Word left;
  int target;
  Word right;
};
using IdealCombination = std::vector<IdealTerm>;

// Oriented rule lhs -> rhs with lhs strictly larger (deglex) than every
// monomial of rhs. cert expresses lhs - rhs over relations/earlier rules.
struct RewriteRule {
  Word lhs;
  NCPoly rhs;
  IdealCombination cert;
  std::size_t id = 0;  // archive position
};

struct RewriteSystem {
  Alphabet alphabet;
  std::vector<RewriteRule> rules;    // live interreduced set
  std::vector<RewriteRule> archive;  // every rule ever created, for provenance
  std::size_t degree_bound = 0;
  std::size_t complete_up_to = 0;  // overlap degree fully processed
  bool saturated = false;          // no overlaps of degree <= degree_bound remained
  bool cap_exceeded = false;

  // live rules indexed by first letter of lhs; slot alphabet.size() holds
  // the empty-lhs rule (the collapsed algebra), if any
  std::vector<std::vector<std::size_t>> index;

  void rebuild_index() {
    index.assign(alphabet.size() + 1, {});
    for (std::size_t i = 0; i < rules.size(); ++i)
      index[rules[i].lhs.empty() ? alphabet.size() : static_cast<std::size_t>(rules[i].lhs[0])]
          .push_back(i);
  }
};

namespace detail {

inline bool subword_at(const Word& w, const Word& pat, std::size_t pos) {
  if (pos + pat.size() > w.size()) return false;
  for (std::size_t i = 0; i < pat.size(); ++i)
    if (w[pos + i] != pat[i]) return false;
  return true;
}

struct Match {
  std::size_t rule;
  std::size_t pos;
};

// Leftmost match; among rules matching at the same position, lowest stored
// index wins. Empty-lhs rules match everywhere.
inline std::optional<Match> find_match(const RewriteSystem& rs, const Word& w) {
  if (!rs.index[rs.alphabet.size()].empty()) return Match{rs.index[rs.alphabet.size()].front(), 0};
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    std::optional<Match> best;
    for (std::size_t ri : rs.index[static_cast<std::size_t>(w[pos])])
      if (subword_at(w, rs.rules[ri].lhs, pos)) {
        if (!best || ri < best->rule) best = Match{ri, pos};
      }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace detail

// Exhaustive rewriting. Deterministic: always reduces the deglex-largest
// reducible monomial at its leftmost matching position, trying rules in
// stored order. With trace non-null, input = result + sum(trace).
inline NCPoly normal_form(const NCPoly& p, const RewriteSystem& rs, IdealCombination* trace = nullptr) {
  NCPoly cur = p;
  while (!cur.is_zero()) {
    bool reduced = false;
    for (auto it = cur.terms().rbegin(); it != cur.terms().rend(); ++it) {
      auto match = detail::find_match(rs, it->first);
      if (!match) continue;
      const RewriteRule& rule = rs.rules[match->rule];
      Rational c = it->second;
      Word left(it->first.begin(), it->first.begin() + match->pos);
      Word right(it->first.begin() + match->pos + rule.lhs.size(), it->first.end());
      // cur -= c * left * (lhs - rhs) * right
      NCPoly replaced = NCPoly::monomial(left, c) * (NCPoly::monomial(rule.lhs, Rational(1)) - rule.rhs) *
                        NCPoly::monomial(right, Rational(1));
      cur -= replaced;
      if (trace) trace->push_back({c, std::move(left), ~static_cast<int>(rule.id), std::move(right)});
      reduced = true;
      break;
    }
    if (!reduced) break;
  }
  return cur;
}

namespace detail {

inline void merge_term(IdealCombination& dst, IdealTerm t) {
  for (auto& u : dst)
    if (u.target == t.target && u.left == t.left && u.right == t.right) {
      u.coef += t.coef;
      return;
    }
  dst.push_back(std::move(t));
}

inline void compress(IdealCombination& comb) {
  IdealCombination out;
  for (auto& t : comb) {
    if (t.coef.is_zero()) continue;
    merge_term(out, std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const IdealTerm& t) { return t.coef.is_zero(); }),
            out.end());
  comb = std::move(out);
}

}  // namespace detail

// Flattens rule references to presentation-relation level, memoized per rule.
inline IdealCombination expand_to_relations(const RewriteSystem& rs, const IdealCombination& comb) {
  std::map<std::size_t, IdealCombination> memo;
  std::function<const IdealCombination&(std::size_t)> rule_comb =
      [&](std::size_t id) -> const IdealCombination& {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    IdealCombination flat;
    for (const auto& t : rs.archive.at(id).cert) {
      if (t.target >= 0) {
        detail::merge_term(flat, t);
      } else {
        for (const auto& inner : rule_comb(static_cast<std::size_t>(~t.target))) {
          IdealTerm nt;
          nt.coef = t.coef * inner.coef;
          nt.left = t.left;
          nt.left.insert(nt.left.end(), inner.left.begin(), inner.left.end());
          nt.target = inner.target;
          nt.right = inner.right;
          nt.right.insert(nt.right.end(), t.right.begin(), t.right.end());
          detail::merge_term(flat, std::move(nt));
        }
      }
    }
    detail::compress(flat);
    return memo.emplace(id, std::move(flat)).first->second;
  };
  IdealCombination out;
  for (const auto& t : comb) {
    if (t.target >= 0) {
      detail::merge_term(out, t);
      continue;
    }
    for (const auto& inner : rule_comb(static_cast<std::size_t>(~t.target))) {
      IdealTerm nt;
      nt.coef = t.coef * inner.coef;
      nt.left = t.left;
      nt.left.insert(nt.left.end(), inner.left.begin(), inner.left.end());
      nt.target = inner.target;
      nt.right = inner.right;
      nt.right.insert(nt.right.end(), t.right.begin(), t.right.end());
      detail::merge_term(out, std::move(nt));
    }
  }
  detail::compress(out);
  return out;
}

// Replays a relation-level combination in the free algebra. The soundness
// check for collapse certificates is expand_combination(...) == 1.
inline NCPoly expand_combination(const Presentation& pres, const IdealCombination& comb) {
  NCPoly acc;
  for (const auto& t : comb) {
    if (t.target < 0) throw std::invalid_argument("expand_combination: combination not relation-level");
    acc += t.coef * (NCPoly::monomial(t.left, Rational(1)) * pres.relations.at(t.target) *
                     NCPoly::monomial(t.right, Rational(1)));
  }
  return acc;
}

namespace detail {

struct PendingPoly {
  NCPoly poly;
  IdealCombination cert;  // poly = sum(cert) in the free algebra
};

// (degree, overlap word, archive ids) canonical queue key
struct OverlapKey {
  Word word;
  std::size_t i, j, pos;  // live-rule ids; rule j's lhs starts at pos, rule i's at 0
  friend bool operator<(const OverlapKey& a, const OverlapKey& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    if (a.word != b.word) return a.word < b.word;
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.pos < b.pos;
  }
};

class Completion {
 public:
  Completion(const Presentation& pres, std::size_t degree_bound, std::size_t rule_cap)
      : pres_(pres), cap_(rule_cap) {
    rs_.alphabet = pres.alphabet;
    rs_.degree_bound = degree_bound;
    rs_.rebuild_index();
  }

  RewriteSystem run() {
    for (std::size_t i = 0; i < pres_.relations.size(); ++i) {
      if (pres_.relations[i].degree() > rs_.degree_bound)
        throw std::invalid_argument("complete: degree bound below relation degree");
      pending_.push_back({pres_.relations[i], {{Rational(1), {}, static_cast<int>(i), {}}}});
    }
    std::size_t processed_degree = 0;
    while (true) {
      while (!pending_.empty()) {
        PendingPoly p = std::move(pending_.front());
        pending_.pop_front();
        if (!absorb(std::move(p))) return finish(false, processed_degree);
      }
      if (queue_.empty()) break;
      auto it = queue_.begin();
      OverlapKey key = *it;
      queue_.erase(it);
      if (!alive(key.i) || !alive(key.j)) continue;
      processed_degree = std::max(processed_degree, key.word.size() - 1);
      PendingPoly sp = s_polynomial(key);
      if (!absorb(std::move(sp))) return finish(false, processed_degree);
    }
    return finish(true, rs_.degree_bound);
  }

 private:
  const Presentation& pres_;
  std::size_t cap_;
  RewriteSystem rs_;  // rules = live working set; archive grows monotonically
  std::set<std::size_t> live_ids_;
  std::deque<PendingPoly> pending_;
  std::set<OverlapKey> queue_;

  bool alive(std::size_t archive_id) const { return live_ids_.count(archive_id) != 0; }

  RewriteSystem finish(bool saturated, std::size_t processed_degree) {
    rs_.saturated = saturated;
    rs_.cap_exceeded = !saturated;
    rs_.complete_up_to = saturated ? rs_.degree_bound : processed_degree;
    return std::move(rs_);
  }

  // reduce, orient, archive, interreduce, queue overlaps; false when the
  // rule cap is hit
  bool absorb(PendingPoly p) {
    IdealCombination trace;
    NCPoly nf = normal_form(p.poly, rs_, &trace);
    if (nf.is_zero()) return true;
    // p.poly = nf + trace  =>  nf = sum(p.cert) - trace
    IdealCombination cert = std::move(p.cert);
    for (auto& t : trace) {
      t.coef = -t.coef;
      cert.push_back(std::move(t));
    }
    Rational lc = nf.leading_coeff();
    if (!lc.is_one()) {
      nf = lc.inverse() * nf;
      Rational inv = lc.inverse();
      for (auto& t : cert) t.coef = inv * t.coef;
    }
    detail::compress(cert);
    if (rs_.rules.size() >= cap_) return false;

    RewriteRule rule;
    rule.lhs = nf.leading_word();
    rule.rhs = NCPoly::monomial(rule.lhs, Rational(1)) - nf;
    rule.cert = std::move(cert);
    rule.id = rs_.archive.size();
    rs_.archive.push_back(rule);
    rs_.rules.push_back(rule);
    live_ids_.insert(rule.id);
    rs_.rebuild_index();
    interreduce_against(rule.id);
    queue_overlaps(rule.id);
    return true;
  }

  void interreduce_against(std::size_t new_id) {
    const Word lhs = rs_.archive[new_id].lhs;  // archive may reallocate below
    bool retired_any = false;
    for (std::size_t k = 0; k < rs_.rules.size();) {
      const RewriteRule& r = rs_.rules[k];
      if (r.id == new_id) {
        ++k;
        continue;
      }
      bool reducible = false;
      for (std::size_t pos = 0; pos + lhs.size() <= r.lhs.size(); ++pos)
        if (subword_at(r.lhs, lhs, pos)) {
          reducible = true;
          break;
        }
      if (!reducible) {
        ++k;
        continue;
      }
      // retire: its polynomial goes back through reduction
      pending_.push_back({NCPoly::monomial(r.lhs, Rational(1)) - r.rhs,
                          {{Rational(1), {}, ~static_cast<int>(r.id), {}}}});
      live_ids_.erase(r.id);
      rs_.rules.erase(rs_.rules.begin() + static_cast<std::ptrdiff_t>(k));
      retired_any = true;
    }
    if (retired_any) rs_.rebuild_index();
    // renormalize right-hand sides; a changed rule becomes a fresh archive
    // entry so provenance references stay valid (entries are immutable)
    for (auto& r : rs_.rules) {
      if (r.id == new_id) continue;
      IdealCombination trace;
      NCPoly red = normal_form(r.rhs, rs_, &trace);
      if (red == r.rhs) continue;
      RewriteRule updated;
      updated.lhs = r.lhs;
      updated.rhs = std::move(red);
      updated.cert = {{Rational(1), {}, ~static_cast<int>(r.id), {}}};
      for (auto& t : trace) updated.cert.push_back(std::move(t));
      detail::compress(updated.cert);
      updated.id = rs_.archive.size();
      rs_.archive.push_back(updated);
      live_ids_.erase(r.id);
      live_ids_.insert(updated.id);
      remap_queue(r.id, updated.id);
      r = rs_.archive.back();
    }
  }

  void remap_queue(std::size_t old_id, std::size_t new_id) {
    std::vector<OverlapKey> changed;
    for (auto it = queue_.begin(); it != queue_.end();) {
      if (it->i == old_id || it->j == old_id) {
        OverlapKey key = *it;
        if (key.i == old_id) key.i = new_id;
        if (key.j == old_id) key.j = new_id;
        changed.push_back(std::move(key));
        it = queue_.erase(it);
      } else {
        ++it;
      }
    }
    for (auto& key : changed) queue_.insert(std::move(key));
  }

  void queue_overlaps(std::size_t new_id) {
    const Word& l1 = rs_.archive[new_id].lhs;
    for (const auto& r : rs_.rules) {
      const Word& l2 = r.lhs;
      add_proper_overlaps(new_id, r.id, l1, l2);
      if (r.id != new_id) add_proper_overlaps(r.id, new_id, l2, l1);
    }
  }

  void add_proper_overlaps(std::size_t i, std::size_t j, const Word& l1, const Word& l2) {
    if (l1.empty() || l2.empty()) return;
    std::size_t maxk = std::min(l1.size(), l2.size()) - 1;
    for (std::size_t k = 1; k <= maxk; ++k) {
      bool match = true;
      for (std::size_t t = 0; t < k && match; ++t)
        if (l1[l1.size() - k + t] != l2[t]) match = false;
      if (!match) continue;
      Word w = l1;
      w.insert(w.end(), l2.begin() + k, l2.end());
      if (w.size() > rs_.degree_bound) continue;
      queue_.insert(OverlapKey{std::move(w), i, j, l1.size() - k});
    }
  }

  PendingPoly s_polynomial(const OverlapKey& key) {
    const RewriteRule& r1 = rs_.archive[key.i];
    const RewriteRule& r2 = rs_.archive[key.j];
    Word prefix(key.word.begin(), key.word.begin() + key.pos);
    Word suffix(key.word.begin() + r1.lhs.size(), key.word.end());
    // spoly = r1.rhs * suffix - prefix * r2.rhs
    //       = prefix * (l2 - rhs2) - (l1 - rhs1) * suffix
    NCPoly spoly = r1.rhs * NCPoly::monomial(suffix, Rational(1)) -
                   NCPoly::monomial(prefix, Rational(1)) * r2.rhs;
    PendingPoly p;
    p.poly = std::move(spoly);
    p.cert.push_back({Rational(1), prefix, ~static_cast<int>(key.j), {}});
    p.cert.push_back({Rational(-1), {}, ~static_cast<int>(key.i), suffix});
    return p;
  }
};

}  // namespace detail

// Buchberger/Mora style completion restricted to overlap words of degree
// <= degree_bound. When the rule cap is hit, the returned system is still a
// sound rewriting system, only flagged incomplete.
inline RewriteSystem complete(const Presentation& pres, std::size_t degree_bound,
                              std::size_t rule_cap = 50000) {
  return detail::Completion(pres, degree_bound, rule_cap).run();
}

// --- triviality ----------------------------------------------------------

// A scalar *-character: letter -> rational value, star-compatible.
using Evaluation = std::map<Letter, Rational>;

inline Rational evaluate_word(const Word& w, const Evaluation& ev) {
  Rational r(1);
  for (Letter l : w) {
    auto it = ev.find(l);
    if (it == ev.end()) throw std::invalid_argument("evaluation missing a generator");
    r *= it->second;
  }
  return r;
}

inline Rational evaluate_poly(const NCPoly& p, const Evaluation& ev) {
  Rational r(0);
  for (const auto& [w, c] : p.terms()) r += c * evaluate_word(w, ev);
  return r;
}

// extends an evaluation given on base letters to star partners
inline Evaluation star_extend(const Alphabet& alpha, const Evaluation& ev) {
  Evaluation full = ev;
  for (const auto& [l, v] : ev) full.emplace(alpha.star(l), v);
  return full;
}

inline bool satisfies_all(const Presentation& pres, const Evaluation& ev) {
  Evaluation full = star_extend(pres.alphabet, ev);
  for (const auto& r : pres.relations)
    if (!evaluate_poly(r, full).is_zero()) return false;
  return true;
}

struct TrivialityResult {
  enum class Kind { TrivialCertified, NontrivialCertified, Inconclusive };
  Kind kind;
  std::size_t degree;             // degree bound that was examined
  IdealCombination certificate;   // TrivialCertified: relation-level, expands to 1
  Evaluation witness;             // NontrivialCertified: satisfying character
  RewriteSystem system;

  std::string verdict_string() const {
    switch (kind) {
      case Kind::TrivialCertified: return "TrivialCertified";
      case Kind::NontrivialCertified: return "NontrivialCertified";
      default: return "InconclusiveUpTo(" + std::to_string(degree) + ")";
    }
  }
};

// Semidecision: collapse is certified by rewriting 1 to 0 (the recorded
// trace is an exact ideal combination, expanded to relation level),
// nontriviality by a satisfying scalar character. Everything else stays
// inconclusive.
inline TrivialityResult triviality_status(const Presentation& pres, std::size_t degree_bound,
                                          const std::optional<Evaluation>& character = std::nullopt,
                                          std::size_t rule_cap = 50000) {
  TrivialityResult res;
  res.degree = degree_bound;
  res.system = complete(pres, degree_bound, rule_cap);
  IdealCombination trace;
  NCPoly one = normal_form(NCPoly::one(), res.system, &trace);
  if (one.is_zero()) {
    res.kind = TrivialityResult::Kind::TrivialCertified;
    res.certificate = expand_to_relations(res.system, trace);
    return res;
  }
  if (character && satisfies_all(pres, *character)) {
    res.kind = TrivialityResult::Kind::NontrivialCertified;
    res.witness = star_extend(pres.alphabet, *character);
    return res;
  }
  res.kind = TrivialityResult::Kind::Inconclusive;
  return res;
}

// --- homomorphism verification --------------------------------------------

struct HomCheck {
  NCPoly relation;   // source relation
  NCPoly image;      // substituted image
  NCPoly residual;   // normal form in the target system
};

struct HomReport {
  bool pass = true;
  std::vector<HomCheck> checks;
};

// image map on base letters; star partners are derived
inline NCPoly substitute(const NCPoly& p, const std::map<Letter, NCPoly>& images) {
  NCPoly acc;
  for (const auto& [w, c] : p.terms()) {
    NCPoly prod = NCPoly::monomial(Word{}, c);
    for (Letter l : w) {
      auto it = images.find(l);
      if (it == images.end()) throw std::invalid_argument("substitute: no image for a generator");
      prod = prod * it->second;
    }
    acc += prod;
  }
  return acc;
}

// Completes the image map over star partners and checks star-compatibility
// syntactically: image(g*) must equal image(g)*.
inline std::map<Letter, NCPoly> star_complete_images(const Alphabet& src, const Alphabet& dst,
                                                     const std::map<Letter, NCPoly>& images) {
  std::map<Letter, NCPoly> full = images;
  for (const auto& [l, img] : images) {
    Letter ls = src.star(l);
    NCPoly starred = img.star(dst);
    auto it = full.find(ls);
    if (it == full.end())
      full.emplace(ls, starred);
    else if (!(it->second == starred))
      throw std::invalid_argument("verify_homomorphism: images are not star-compatible");
  }
  return full;
}

// For every source relation r, reduce r(images) in the target system.
inline HomReport verify_homomorphism(const Presentation& src, const RewriteSystem& dst_rs,
                                     const std::map<Letter, NCPoly>& images) {
  auto full = star_complete_images(src.alphabet, dst_rs.alphabet, images);
  HomReport report;
  for (const auto& r : src.relations) {
    HomCheck chk;
    chk.relation = r;
    chk.image = substitute(r, full);
    chk.residual = normal_form(chk.image, dst_rs);
    if (!chk.residual.is_zero()) report.pass = false;
    report.checks.push_back(std::move(chk));
  }
  return report;
}

// --- hereditary closure ----------------------------------------------------

// One saturation step toward the hereditary quotient: when sum x_i* x_i
// rewrites to 0, each x_i = 0 is appended to the presentation.
inline Presentation hereditary_closure_step(const Presentation& pres, const RewriteSystem& rs,
                                            const std::vector<NCPoly>& candidates) {
  NCPoly sum;
  for (const auto& x : candidates) sum += x.star(pres.alphabet) * x;
  if (!normal_form(sum, rs).is_zero()) return pres;
  Presentation ext = pres;
  for (const auto& x : candidates) ext.add_relation(x);
  return ext;
}

}  // namespace syncgame
