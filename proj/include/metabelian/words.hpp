#pragma once

// One grammar serves the CLI, files, and tests:
//   word    := term {term}            term := atom ['^' int]
//   atom    := 'x'nat | '(' word ')' | '[' word ',' word ']' | '1'
//   modexpr := '1' | mfactor {['*'] mfactor}
//   mfactor := '[' 'x'nat ',' 'x'nat ']' ['^' '(' poly ')']
//   poly    := ['-'] pterm {('+'|'-') pterm}   pterm := pfactor {['*'] pfactor}
//   pfactor := nat | 'a'nat ['^' int] | '(' poly ')' ['^' int]
// Whitespace-separated juxtaposition means product; '*' is optional.
// Element text is the word grammar extended with module factors, which is
// exactly what print_element emits.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "metabelian/commod.hpp"
#include "metabelian/group.hpp"
#include "metabelian/laurent.hpp"
#include "metabelian/word.hpp"

namespace metabelian {

namespace detail {

class Cursor {
public:
  Cursor(std::string_view text, int rank) : text_(text), rank_(rank) {}

  int rank() const { return rank_; }
  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char *what) {
    if (!accept(c))
      fail(Errc::syntax_error,
           std::string("expected '") + c + "' (" + what + ") at offset " +
               std::to_string(pos_),
           pos_);
  }

  [[noreturn]] void error(const std::string &message) {
    fail(Errc::syntax_error, message + " at offset " + std::to_string(pos_), pos_);
  }

  bool peek_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  long long parse_nat() {
    skip_ws();
    if (!peek_digit()) error("expected a number");
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > (1LL << 40)) error("number too large");
      ++pos_;
    }
    return v;
  }

  long long parse_int() {
    skip_ws();
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    long long v = parse_nat();
    return neg ? -v : v;
  }

  // 'x'k or 'a'k with a range check that names the offending token.
  int parse_indexed(char prefix) {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || text_[pos_] != prefix)
      error(std::string("expected generator '") + prefix + "<k>'");
    ++pos_;
    if (!peek_digit()) error(std::string("expected an index after '") + prefix + "'");
    long long k = parse_nat();
    if (k < 1 || k > rank_)
      fail(Errc::bad_index,
           std::string(1, prefix) + std::to_string(k) + " is out of range 1.." +
               std::to_string(rank_),
           start);
    return static_cast<int>(k);
  }

private:
  std::string_view text_;
  int rank_;
  std::size_t pos_ = 0;
};

inline LaurentPoly parse_poly_expr(Cursor &c);

inline LaurentPoly parse_poly_factor(Cursor &c) {
  const int n = c.rank();
  char ch = c.peek();
  if (ch == '(') {
    c.expect('(', "sub-expression");
    LaurentPoly p = parse_poly_expr(c);
    c.expect(')', "sub-expression");
    if (c.accept('^')) return poly_pow(p, c.parse_int());
    return p;
  }
  if (ch == 'a') {
    int i = c.parse_indexed('a');
    long long e = 1;
    if (c.accept('^')) e = c.parse_int();
    return LaurentPoly::variable(n, i, e);
  }
  if (std::isdigit(static_cast<unsigned char>(ch)))
    return LaurentPoly::constant(n, Int(c.parse_nat()));
  c.error("expected a coefficient, variable, or '('");
}

inline bool starts_poly_factor(char ch) {
  return ch == '(' || ch == 'a' || std::isdigit(static_cast<unsigned char>(ch));
}

inline LaurentPoly parse_poly_term(Cursor &c) {
  LaurentPoly p = parse_poly_factor(c);
  for (;;) {
    if (c.accept('*')) {
      p *= parse_poly_factor(c);
      continue;
    }
    if (starts_poly_factor(c.peek())) {
      p *= parse_poly_factor(c);
      continue;
    }
    return p;
  }
}

inline LaurentPoly parse_poly_expr(Cursor &c) {
  bool neg = false;
  if (c.accept('-')) neg = true;
  else c.accept('+');
  LaurentPoly p = parse_poly_term(c);
  if (neg) p = -p;
  for (;;) {
    if (c.accept('+')) p += parse_poly_term(c);
    else if (c.accept('-')) p -= parse_poly_term(c);
    else return p;
  }
}

inline GroupWord parse_word_expr(Cursor &c, bool toplevel);

inline GroupWord parse_word_atom(Cursor &c) {
  const int n = c.rank();
  char ch = c.peek();
  if (ch == 'x') {
    GroupWord w(n);
    w.push(c.parse_indexed('x'), 1);
    return w;
  }
  if (ch == '(') {
    c.expect('(', "sub-word");
    GroupWord w = parse_word_expr(c, false);
    c.expect(')', "sub-word");
    return w;
  }
  if (ch == '[') {
    c.expect('[', "commutator");
    GroupWord u = parse_word_expr(c, false);
    c.expect(',', "commutator");
    GroupWord v = parse_word_expr(c, false);
    c.expect(']', "commutator");
    return commutator_word(u, v);
  }
  if (ch == '1') {
    c.accept('1');
    return GroupWord(n);
  }
  c.error("expected a generator, '(', '[', or '1'");
}

inline bool starts_word_atom(char ch) {
  return ch == 'x' || ch == '(' || ch == '[' || ch == '1';
}

inline GroupWord parse_word_expr(Cursor &c, bool toplevel) {
  GroupWord w(c.rank());
  bool any = false;
  for (;;) {
    c.accept('*');
    char ch = c.peek();
    if (!starts_word_atom(ch)) {
      if (!any) c.error("expected a word");
      return w;
    }
    (void)toplevel;
    GroupWord atom = parse_word_atom(c);
    if (c.accept('^')) atom = word_pow(atom, c.parse_int());
    w.append(atom);
    any = true;
    if (c.at_end()) return w;
    ch = c.peek();
    if (ch == ')' || ch == ']' || ch == ',') return w;
  }
}

} // namespace detail

inline GroupWord parse_word(std::string_view text, int rank) {
  detail::Cursor c(text, rank);
  GroupWord w = detail::parse_word_expr(c, true);
  if (!c.at_end()) c.error("unexpected trailing input");
  return w;
}

inline LaurentPoly parse_poly(std::string_view text, int rank) {
  detail::Cursor c(text, rank);
  LaurentPoly p = detail::parse_poly_expr(c);
  if (!c.at_end()) c.error("unexpected trailing input");
  return p;
}

namespace detail {

// '[' 'x'i ',' 'x'j ']' ['^' '(' poly ')']; i < j is normalized through
// [a,b]^-1 = [b,a], i = j contributes nothing.
inline void parse_module_factor(Cursor &c, RawModuleExpr &out) {
  c.expect('[', "module factor");
  int i = c.parse_indexed('x');
  c.expect(',', "module factor");
  int j = c.parse_indexed('x');
  c.expect(']', "module factor");
  LaurentPoly q = LaurentPoly::constant(c.rank(), 1);
  if (c.accept('^')) {
    c.expect('(', "module exponent");
    q = parse_poly_expr(c);
    c.expect(')', "module exponent");
  }
  if (i == j) return;
  if (i > j) out.push(CommIndex(i, j), q);
  else out.push(CommIndex(j, i), -q);
}

} // namespace detail

inline RawModuleExpr parse_module_expr(std::string_view text, int rank) {
  detail::Cursor c(text, rank);
  RawModuleExpr e(rank);
  if (c.peek() == '1') {
    c.accept('1');
    if (!c.at_end()) c.error("unexpected trailing input");
    return e;
  }
  for (;;) {
    detail::parse_module_factor(c, e);
    if (c.at_end()) return e;
    c.accept('*');
    if (c.at_end()) c.error("dangling '*'");
  }
}

// Element text: word atoms and module factors mixed, folded by mul.
inline Element parse_element(std::string_view text, int rank) {
  detail::Cursor c(text, rank);
  Element acc = Element::identity(rank);
  bool any = false;
  while (!c.at_end()) {
    c.accept('*');
    char ch = c.peek();
    if (ch == '[') {
      // Look ahead: a module factor is exactly [x<i>,x<j>] possibly with a
      // ^(poly) exponent; anything else inside brackets is a word commutator.
      std::size_t save = c.pos();
      RawModuleExpr one(rank);
      bool module_factor = true;
      try {
        detail::parse_module_factor(c, one);
      } catch (const Error &) {
        module_factor = false;
      }
      if (module_factor && (c.at_end() || c.peek() != '^')) {
        acc = mul(acc, Element::from_part(collect(one)));
        any = true;
        continue;
      }
      // Re-parse as a word atom (covers [..]^int and nested words).
      c.set_pos(save);
      GroupWord atom = detail::parse_word_atom(c);
      if (c.accept('^')) atom = word_pow(atom, c.parse_int());
      acc = mul(acc, evaluate_word(atom));
      any = true;
      continue;
    }
    if (detail::starts_word_atom(ch)) {
      GroupWord atom = detail::parse_word_atom(c);
      if (c.accept('^')) atom = word_pow(atom, c.parse_int());
      acc = mul(acc, evaluate_word(atom));
      any = true;
      continue;
    }
    c.error("expected a word atom or module factor");
  }
  if (!any) c.error("expected an element");
  return acc;
}

// ---- printing (canonical, byte-stable) ----

inline std::string print_monomial_vars(const Monomial &m, char prefix) {
  std::string s;
  for (int i = 1; i <= m.rank(); ++i) {
    long long e = m.exponent(i);
    if (e == 0) continue;
    if (!s.empty()) s += '*';
    s += prefix;
    s += std::to_string(i);
    if (e != 1) {
      s += '^';
      s += std::to_string(e);
    }
  }
  return s;
}

inline std::string print_poly(const LaurentPoly &p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto &[m, c] : p.terms()) {
    Int mag = c < 0 ? Int(-c) : c;
    bool negative = c < 0;
    if (first) {
      if (negative) s += '-';
      first = false;
    } else {
      s += negative ? " - " : " + ";
    }
    std::string vars = print_monomial_vars(m, 'a');
    if (vars.empty()) {
      s += mag.str();
    } else if (mag == 1) {
      s += vars;
    } else {
      s += mag.str();
      s += '*';
      s += vars;
    }
  }
  return s;
}

inline std::string print_word(const GroupWord &w) {
  if (w.empty()) return "1";
  std::string s;
  for (const Letter &l : w.letters()) {
    if (!s.empty()) s += ' ';
    s += 'x';
    s += std::to_string(l.index);
    if (l.exponent != 1) {
      s += '^';
      s += std::to_string(l.exponent);
    }
  }
  return s;
}

inline std::string print_module_factor(const CommIndex &c, const LaurentPoly &q) {
  return "[x" + std::to_string(c.i) + ",x" + std::to_string(c.j) + "]^(" +
         print_poly(q) + ")";
}

inline std::string print_part(const CollectedPart &u) {
  if (u.empty()) return "1";
  std::string s;
  for (const auto &[c, q] : u.beta()) {
    if (!s.empty()) s += " * ";
    s += print_module_factor(c, q);
  }
  return s;
}

inline std::string print_module_expr(const RawModuleExpr &e) {
  if (e.empty()) return "1";
  std::string s;
  for (const auto &[c, q] : e.factors()) {
    if (!s.empty()) s += " * ";
    s += print_module_factor(c, q);
  }
  return s;
}

inline std::string print_element(const Element &g) {
  if (g.is_identity()) return "1";
  std::string s;
  for (int i = 1; i <= g.rank(); ++i) {
    long long e = g.gamma_at(i);
    if (e == 0) continue;
    if (!s.empty()) s += ' ';
    s += 'x';
    s += std::to_string(i);
    if (e != 1) {
      s += '^';
      s += std::to_string(e);
    }
  }
  for (const auto &[c, q] : g.part().beta()) {
    if (!s.empty()) s += ' ';
    s += print_module_factor(c, q);
  }
  return s;
}

inline std::string print_rational(const Rat &r) {
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// ---- expansion to plain words ----

// Realizes [x_i,x_j]^(sum c_k M_k) as a word: each term becomes
// t_k^-1 [x_i,x_j]^(c_k) t_k with t_k the ascending word of the monomial.
inline GroupWord expand_module_expr(const RawModuleExpr &e) {
  const int n = e.rank();
  GroupWord w(n);
  for (const auto &[c, q] : e.factors()) {
    GroupWord gi(n), gj(n);
    gi.push(c.i, 1);
    gj.push(c.j, 1);
    GroupWord base = commutator_word(gi, gj);
    for (const auto &[m, coef] : q.terms()) {
      if (coef > 1000000 || coef < -1000000)
        fail(Errc::bad_input, "module coefficient too large to expand as a word");
      GroupWord t = word_of_monomial(m);
      w.append(t.inverse());
      w.append(word_pow(base, coef.convert_to<long long>()));
      w.append(t);
    }
  }
  return w;
}

inline GroupWord expand_part(const CollectedPart &u) { return expand_module_expr(to_raw(u)); }

// The printed normal form as a plain word (generator block, then the
// expanded part); evaluate_word of the result reproduces the element.
inline GroupWord element_to_word(const Element &g) {
  GroupWord w(g.rank());
  for (int i = 1; i <= g.rank(); ++i) w.push(i, g.gamma_at(i));
  w.append(expand_part(g.part()));
  return w;
}

} // namespace metabelian
