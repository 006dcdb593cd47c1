#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "syncgame/rational.hpp"

namespace syncgame {

// Letters index into an Alphabet; a word is a product of letters and the
// empty word is the algebra unit.
using Letter = int;
using Word = std::vector<Letter>;

// Generator alphabet with a star involution. A non-self-adjoint generator
// occupies two adjacent slots; the partner's name carries a trailing
// apostrophe, which is also the adjoint suffix of the text grammar.
class Alphabet {
 public:
  Letter add_selfadjoint(const std::string& name) {
    Letter l = add_name(name);
    star_.push_back(l);
    return l;
  }
  // returns (g, g*)
  std::pair<Letter, Letter> add_pair(const std::string& name) {
    Letter a = add_name(name);
    star_.push_back(a + 1);
    Letter b = add_name(name + "'");
    star_.push_back(a);
    return {a, b};
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(Letter l) const { return names_.at(static_cast<std::size_t>(l)); }
  Letter star(Letter l) const { return star_.at(static_cast<std::size_t>(l)); }
  bool self_adjoint(Letter l) const { return star(l) == l; }
  Letter find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
  }

  Word star_word(const Word& w) const {
    Word r(w.rbegin(), w.rend());
    for (auto& l : r) l = star(l);
    return r;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_ && a.star_ == b.star_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Letter> star_;
  std::map<std::string, Letter> index_;

  Letter add_name(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("Alphabet: empty generator name");
    if (index_.count(name)) throw std::invalid_argument("Alphabet: duplicate generator " + name);
    Letter l = static_cast<Letter>(names_.size());
    names_.push_back(name);
    index_[name] = l;
    return l;
  }
};

// Degree first, then lexicographic in declaration order of the letters.
struct DeglexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Element of the free *-algebra: exact-rational combination of words.
class NCPoly {
 public:
  using Terms = std::map<Word, Rational, DeglexLess>;

  NCPoly() = default;
  static NCPoly zero() { return NCPoly(); }
  static NCPoly one() { return monomial(Word{}, Rational(1)); }
  static NCPoly letter(Letter l) { return monomial(Word{l}, Rational(1)); }
  static NCPoly monomial(Word w, Rational c) {
    NCPoly p;
    if (!c.is_zero()) p.terms_.emplace(std::move(w), std::move(c));
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }
  std::size_t degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }
  const Word& leading_word() const { return terms_.rbegin()->first; }
  const Rational& leading_coeff() const { return terms_.rbegin()->second; }
  Rational coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Word& w, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend NCPoly operator+(const NCPoly& a, const NCPoly& b) {
    NCPoly r = a;
    for (const auto& [w, c] : b.terms_) r.add_term(w, c);
    return r;
  }
  friend NCPoly operator-(const NCPoly& a, const NCPoly& b) {
    NCPoly r = a;
    for (const auto& [w, c] : b.terms_) r.add_term(w, -c);
    return r;
  }
  NCPoly operator-() const {
    NCPoly r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
  }
  friend NCPoly operator*(const Rational& s, const NCPoly& p) {
    NCPoly r;
    if (s.is_zero()) return r;
    for (const auto& [w, c] : p.terms_) r.terms_.emplace(w, s * c);
    return r;
  }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    NCPoly r;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        r.add_term(w, ca * cb);
      }
    return r;
  }
  NCPoly& operator+=(const NCPoly& o) { return *this = *this + o; }
  NCPoly& operator-=(const NCPoly& o) { return *this = *this - o; }

  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }

  // coefficients are real rationals, so star reverses words only
  NCPoly star(const Alphabet& alpha) const {
    NCPoly r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(alpha.star_word(w), c);
    return r;
  }

  NCPoly monic() const {
    if (is_zero()) return *this;
    return leading_coeff().inverse() * *this;
  }

  std::string to_string(const Alphabet& alpha) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [w, c] = *it;
      Rational a = c.abs();
      if (first) {
        if (c.sign() < 0) out << "-";
        first = false;
      } else {
        out << (c.sign() < 0 ? " - " : " + ");
      }
      bool need_coeff = !a.is_one() || w.empty();
      if (need_coeff) out << a.to_string();
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (need_coeff || i > 0) out << "*";
        out << alpha.name(w[i]);
      }
    }
    return out.str();
  }

 private:
  Terms terms_;
};

// Finitely presented *-algebra: relations are monic, nonzero, star-closed.
struct Presentation {
  Alphabet alphabet;
  std::vector<NCPoly> relations;

  // Normalizes to monic form, drops zero polynomials, dedups, and inserts
  // the starred relation when it differs.
  void add_relation(const NCPoly& r) {
    push_unique(r.monic());
    push_unique(r.star(alphabet).monic());
  }

  bool has_relation(const NCPoly& monic_r) const {
    for (const auto& q : relations)
      if (q == monic_r) return true;
    return false;
  }

  std::size_t max_relation_degree() const {
    std::size_t d = 0;
    for (const auto& r : relations) d = std::max(d, r.degree());
    return d;
  }

 private:
  void push_unique(const NCPoly& r) {
    if (r.is_zero()) return;
    if (!has_relation(r)) relations.push_back(r);
  }
};

// --- text format ---------------------------------------------------------
// One relation per line (meaning relation = 0). Optional header line
//   @generators a b b' c ...
// declares the alphabet in deglex order; a trailing apostrophe marks the
// star partner of the preceding name. Without the header, identifiers are
// collected self-adjoint in order of first appearance. '#' starts a comment.
//
// Grammar: expr := ['-'] term (('+'|'-') term)* ; term := factor ('*' factor)*
//          factor := primary "'"* ; primary := rational | ident | '(' expr ')'

class PresParseError : public std::runtime_error {
 public:
  PresParseError(const std::string& msg, std::size_t line, std::size_t col)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg) {}
};

namespace detail {

class PresParser {
 public:
  explicit PresParser(std::string text) : text_(std::move(text)) {}

  // one expression over an already-declared alphabet
  NCPoly parse_single(Presentation& pres) {
    lineno_ = 1;
    line_ = text_;
    pos_ = 0;
    NCPoly r = parse_expr(pres, true);
    skip_ws();
    if (!eol()) fail("unexpected trailing input");
    return r;
  }

  Presentation parse() {
    Presentation pres;
    bool declared = false;
    std::istringstream in(text_);
    std::string line;
    while (std::getline(in, line)) {
      ++lineno_;
      line_ = line;
      pos_ = 0;
      skip_ws();
      if (eol() || peek() == '#') continue;
      if (peek() == '@') {
        parse_directive(pres, declared);
        continue;
      }
      NCPoly r = parse_expr(pres, declared);
      skip_ws();
      if (!eol()) fail("unexpected trailing input");
      pres.add_relation(r);
    }
    return pres;
  }

 private:
  std::string text_;
  std::string line_;
  std::size_t lineno_ = 0, pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw PresParseError(msg, lineno_, pos_ + 1); }
  bool eol() const { return pos_ >= line_.size(); }
  char peek() const { return line_[pos_]; }
  void skip_ws() {
    while (!eol() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (!eol() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

  std::string read_ident() {
    std::string s;
    while (!eol() && ident_char(peek())) s += line_[pos_++];
    return s;
  }

  void parse_directive(Presentation& pres, bool& declared) {
    ++pos_;  // '@'
    std::string d = read_ident();
    if (d != "generators") fail("unknown directive @" + d);
    if (declared || pres.alphabet.size() > 0) fail("@generators must come first and appear once");
    declared = true;
    while (true) {
      skip_ws();
      if (eol() || peek() == '#') break;
      if (!ident_start(peek())) fail("expected generator name");
      std::string name = read_ident();
      bool primed = !eol() && peek() == '\'';
      if (primed) {
        ++pos_;
        std::size_t sz = pres.alphabet.size();
        if (sz == 0 || pres.alphabet.name(static_cast<Letter>(sz - 1)) != name)
          fail("star partner " + name + "' must directly follow " + name);
        // retroactively convert the previous self-adjoint letter into a pair
        Alphabet rebuilt;
        for (std::size_t i = 0; i + 1 < sz; ++i) {
          Letter l = static_cast<Letter>(i);
          if (pres.alphabet.self_adjoint(l))
            rebuilt.add_selfadjoint(pres.alphabet.name(l));
          else if (pres.alphabet.star(l) > l)
            rebuilt.add_pair(pres.alphabet.name(l));
        }
        rebuilt.add_pair(name);
        pres.alphabet = rebuilt;
      } else {
        pres.alphabet.add_selfadjoint(name);
      }
    }
    if (pres.alphabet.size() == 0) fail("@generators declares no generators");
  }

  Letter lookup(Presentation& pres, bool declared, const std::string& name, std::size_t start) {
    Letter l = pres.alphabet.find(name);
    if (l >= 0) return l;
    if (declared) {
      pos_ = start;
      fail("undeclared generator " + name);
    }
    return pres.alphabet.add_selfadjoint(name);
  }

  NCPoly parse_expr(Presentation& pres, bool declared) {
    bool neg = accept('-');
    NCPoly acc = parse_term(pres, declared);
    if (neg) acc = -acc;
    while (true) {
      if (accept('+'))
        acc += parse_term(pres, declared);
      else if (accept('-'))
        acc -= parse_term(pres, declared);
      else
        break;
    }
    return acc;
  }

  NCPoly parse_term(Presentation& pres, bool declared) {
    NCPoly acc = parse_factor(pres, declared);
    while (accept('*')) acc = acc * parse_factor(pres, declared);
    return acc;
  }

  NCPoly parse_factor(Presentation& pres, bool declared) {
    NCPoly p = parse_primary(pres, declared);
    while (!eol() && peek() == '\'') {
      ++pos_;
      p = p.star(pres.alphabet);
    }
    return p;
  }

  NCPoly parse_primary(Presentation& pres, bool declared) {
    skip_ws();
    if (eol()) fail("unexpected end of line");
    if (peek() == '(') {
      ++pos_;
      NCPoly p = parse_expr(pres, declared);
      if (!accept(')')) fail("expected )");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num;
      while (!eol() && std::isdigit(static_cast<unsigned char>(peek()))) num += line_[pos_++];
      if (!eol() && peek() == '/') {
        ++pos_;
        std::string den;
        while (!eol() && std::isdigit(static_cast<unsigned char>(peek()))) den += line_[pos_++];
        if (den.empty()) fail("expected denominator digits");
        return NCPoly::monomial(Word{}, Rational(BigInt::from_string(num), BigInt::from_string(den)));
      }
      return NCPoly::monomial(Word{}, Rational(BigInt::from_string(num), BigInt(1)));
    }
    if (ident_start(peek())) {
      std::size_t start = pos_;
      std::string name = read_ident();
      return NCPoly::letter(lookup(pres, declared, name, start));
    }
    fail(std::string("unexpected character '") + peek() + "'");
  }
};

}  // namespace detail

inline Presentation parse_presentation(const std::string& text) {
  return detail::PresParser(text).parse();
}

inline std::string to_text(const Presentation& pres) {
  std::ostringstream out;
  out << "@generators";
  for (std::size_t i = 0; i < pres.alphabet.size(); ++i)
    out << " " << pres.alphabet.name(static_cast<Letter>(i));
  out << "\n";
  for (const auto& r : pres.relations) out << r.to_string(pres.alphabet) << "\n";
  return out.str();
}

}  // namespace syncgame
