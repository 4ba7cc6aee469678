#pragma once

// Model files.
//
//   flavor associative|commutative
//   grading homological|cohomological
//   gen NAME : INT [stage INT] [base] [aux]
//   d NAME = EXPR
//   diag NAME = [RATIONAL *] A ⊗ B (+|- ...)
//   name TEXT
//   description TEXT
//
// Statements end at a newline or ';'. '#' starts a comment. EXPR is a sum of
// terms [RATIONAL *] NAME[^INT] (NAME[^INT])*; factors are separated by
// whitespace or '*'. A bare rational and 0 are terms too. In diag pairs, A and
// B are generator names or 1 (the unit cell); "(x)" may be written for ⊗.

#include "dertower/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dertower {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column)
  {
  }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// One term c * left ⊗ right of a cell diagonal; -1 stands for the unit cell.
struct DiagonalTerm {
  Rational coefficient;
  int left = -1;
  int right = -1;
};

struct Model {
  std::shared_ptr<FreeDgAlgebra> algebra;
  // Reduced part of the cell diagonal, by generator.
  std::map<int, std::vector<DiagonalTerm>> diagonal;
  // Known (co)homology of the space, by native degree, when available:
  // reduced homology of X for associative models, cohomology of the total
  // space for commutative ones.
  std::optional<std::map<int, std::size_t>> expected_homology;
  std::string source;  // builtin:NAME or a path

  bool is_adams_hilton() const
  {
    return algebra->flavor() == Flavor::associative && algebra->grading() == Grading::homological;
  }
  bool is_sullivan() const
  {
    return algebra->flavor() == Flavor::commutative && algebra->grading() == Grading::cohomological;
  }
  std::vector<bool> base_mask() const
  {
    std::vector<bool> out;
    for (const auto& g : algebra->generators()) out.push_back(g.base);
    return out;
  }
};

namespace detail {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;
  int column = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  bool starts_with(const std::string& s) const { return text.compare(pos, s.size(), s) == 0; }
  void advance(std::size_t n = 1)
  {
    for (std::size_t i = 0; i < n && !done(); ++i) {
      if (text[pos] == '\n') {
        ++line;
        column = 1;
      } else if ((static_cast<unsigned char>(text[pos]) & 0xC0) != 0x80) {
        ++column;
      }
      ++pos;
    }
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line, column, message); }
};

struct Token {
  enum Kind { word, integer, rational, symbol, end } kind = end;
  std::string text;
  int line = 0;
  int column = 0;
};

// Tokens of one statement (up to newline or ';').
inline std::vector<Token> tokenize_statement(Cursor& c)
{
  std::vector<Token> out;
  while (!c.done()) {
    const char ch = c.peek();
    if (ch == '\n' || ch == ';') {
      c.advance();
      break;
    }
    if (ch == '#') {
      while (!c.done() && c.peek() != '\n') c.advance();
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      c.advance();
      continue;
    }
    Token t;
    t.line = c.line;
    t.column = c.column;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      t.kind = Token::word;
      while (!c.done() && (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_')) {
        t.text += c.peek();
        c.advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      t.kind = Token::integer;
      while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        t.text += c.peek();
        c.advance();
      }
      if (c.peek() == '/') {
        t.kind = Token::rational;
        t.text += '/';
        c.advance();
        if (!std::isdigit(static_cast<unsigned char>(c.peek()))) c.fail("expected a denominator after '/'");
        while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
          t.text += c.peek();
          c.advance();
        }
      }
    } else if (c.starts_with("⊗")) {
      t.kind = Token::symbol;
      t.text = "⊗";
      c.advance(std::string("⊗").size());
    } else if (c.starts_with("(x)")) {
      t.kind = Token::symbol;
      t.text = "⊗";
      c.advance(3);
    } else if (std::string(":=+-*^").find(ch) != std::string::npos) {
      t.kind = Token::symbol;
      t.text = std::string(1, ch);
      c.advance();
    } else {
      c.fail(std::string("unexpected character '") + ch + "'");
    }
    out.push_back(std::move(t));
  }
  return out;
}

struct Factor {
  std::string name;
  int exponent = 1;
  int line = 0;
  int column = 0;
};

struct Term {
  Rational coefficient{1};
  std::vector<Factor> factors;
  int line = 0;
  int column = 0;
};

struct Statement {
  std::vector<Token> tokens;
  std::size_t i = 0;

  bool at_end() const { return i >= tokens.size(); }
  const Token& peek() const
  {
    static const Token end_token;
    return at_end() ? end_token : tokens[i];
  }
  const Token& next(const Cursor& c)
  {
    if (at_end()) fail(c, "unexpected end of statement");
    return tokens[i++];
  }
  bool accept(const std::string& symbol)
  {
    if (!at_end() && tokens[i].kind == Token::symbol && tokens[i].text == symbol) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const Cursor& c, const std::string& message) const
  {
    if (at_end()) {
      const Token& last = tokens.back();
      throw ParseError(last.line, last.column + static_cast<int>(last.text.size()), message);
    }
    (void)c;
    throw ParseError(tokens[i].line, tokens[i].column, message);
  }
  void expect(const Cursor& c, const std::string& symbol)
  {
    if (!accept(symbol)) fail(c, "expected '" + symbol + "'");
  }
  std::string word(const Cursor& c, const std::string& what)
  {
    if (at_end() || peek().kind != Token::word) fail(c, "expected " + what);
    return tokens[i++].text;
  }
  long integer(const Cursor& c, bool allow_sign)
  {
    long sign = 1;
    if (allow_sign && accept("-")) sign = -1;
    if (at_end() || peek().kind != Token::integer) fail(c, "expected an integer");
    return sign * std::stol(tokens[i++].text);
  }
};

inline Rational token_rational(const Token& t) { return parse_rational(t.text); }

// Sum of terms; stops at the end of the statement.
inline std::vector<Term> parse_expression(const Cursor& c, Statement& st)
{
  std::vector<Term> terms;
  bool first = true;
  while (true) {
    Rational sign(1);
    if (st.accept("-"))
      sign = -1;
    else if (!st.accept("+") && !first)
      st.fail(c, "expected '+' or '-'");
    first = false;
    Term term;
    term.line = st.peek().line;
    term.column = st.peek().column;
    if (st.at_end()) st.fail(c, "expected a term");
    if (st.peek().kind == Token::integer || st.peek().kind == Token::rational) {
      term.coefficient = token_rational(st.next(c));
      st.accept("*");
    }
    while (!st.at_end() && st.peek().kind == Token::word) {
      Factor f;
      f.line = st.peek().line;
      f.column = st.peek().column;
      f.name = st.next(c).text;
      if (st.accept("^")) {
        const long e = st.integer(c, false);
        if (e < 1) st.fail(c, "exponent must be positive");
        f.exponent = static_cast<int>(e);
      }
      term.factors.push_back(f);
      if (!st.at_end() && st.peek().kind == Token::symbol && st.peek().text == "*") {
        st.accept("*");
        if (st.at_end() || st.peek().kind != Token::word) st.fail(c, "expected a generator after '*'");
      }
    }
    term.coefficient *= sign;
    terms.push_back(std::move(term));
    if (st.at_end()) break;
    if (!(st.peek().kind == Token::symbol && (st.peek().text == "+" || st.peek().text == "-")))
      st.fail(c, "unexpected token '" + st.peek().text + "'");
  }
  return terms;
}

struct PendingDifferential {
  std::string name;
  std::vector<Term> terms;
  int line = 0;
  int column = 0;
};

struct PendingDiagonal {
  std::string name;
  Rational coefficient;
  std::string left;
  std::string right;
  int line = 0;
  int column = 0;
};

}  // namespace detail

inline Model parse_model(const std::string& text, const std::string& source = "<input>")
{
  detail::Cursor cursor{text};
  std::optional<Flavor> flavor;
  std::optional<Grading> grading;
  std::vector<Generator> gens;
  std::map<std::string, std::pair<int, int>> gen_position;
  std::vector<detail::PendingDifferential> diffs;
  std::vector<detail::PendingDiagonal> diags;
  std::string name, description;
  std::map<std::string, bool> stage_given;

  while (!cursor.done()) {
    while (cursor.peek() == ' ' || cursor.peek() == '\t' || cursor.peek() == '\r') cursor.advance();
    // free text up to the end of the statement
    bool is_text = false;
    for (const std::string key : {"name", "description"}) {
      if (!cursor.starts_with(key)) continue;
      const char after = cursor.pos + key.size() < text.size() ? text[cursor.pos + key.size()] : '\n';
      if (after != ' ' && after != '\t' && after != '\n' && after != ';') continue;
      cursor.advance(key.size());
      std::string value;
      while (!cursor.done() && cursor.peek() != '\n' && cursor.peek() != ';' && cursor.peek() != '#') {
        value += cursor.peek();
        cursor.advance();
      }
      const auto first = value.find_first_not_of(" \t\r");
      const auto last = value.find_last_not_of(" \t\r");
      value = first == std::string::npos ? "" : value.substr(first, last - first + 1);
      (key == "name" ? name : description) = value;
      is_text = true;
      break;
    }
    if (is_text) continue;
    detail::Statement st{detail::tokenize_statement(cursor)};
    if (st.tokens.empty()) continue;
    const detail::Token head = st.next(cursor);
    if (head.kind != detail::Token::word) throw ParseError(head.line, head.column, "expected a keyword");
    if (head.text == "flavor") {
      const std::string v = st.word(cursor, "associative or commutative");
      if (v == "associative")
        flavor = Flavor::associative;
      else if (v == "commutative")
        flavor = Flavor::commutative;
      else
        throw ParseError(st.tokens[1].line, st.tokens[1].column, "unknown flavor " + v);
    } else if (head.text == "grading") {
      const std::string v = st.word(cursor, "homological or cohomological");
      if (v == "homological")
        grading = Grading::homological;
      else if (v == "cohomological")
        grading = Grading::cohomological;
      else
        throw ParseError(st.tokens[1].line, st.tokens[1].column, "unknown grading " + v);
    } else if (head.text == "gen") {
      Generator g;
      const detail::Token& nt = st.peek();
      g.name = st.word(cursor, "a generator name");
      if (gen_position.count(g.name)) throw ParseError(nt.line, nt.column, "generator " + g.name + " declared twice");
      st.expect(cursor, ":");
      const detail::Token& dt = st.peek();
      const long deg = st.integer(cursor, true);
      bool has_stage = false;
      while (!st.at_end()) {
        const std::string opt = st.word(cursor, "stage, base or aux");
        if (opt == "stage") {
          const long s = st.integer(cursor, false);
          g.stage = static_cast<int>(s);
          has_stage = true;
        } else if (opt == "base") {
          g.base = true;
        } else if (opt == "aux") {
          g.auxiliary = true;
        } else {
          throw ParseError(st.tokens[st.i - 1].line, st.tokens[st.i - 1].column, "unknown generator option " + opt);
        }
      }
      if (deg == 0 && !g.auxiliary) throw ParseError(dt.line, dt.column, "generator degree must be nonzero");
      g.degree = static_cast<int>(deg);
      if (!has_stage) g.stage = g.base ? 0 : std::abs(g.degree);
      stage_given[g.name] = has_stage;
      gen_position[g.name] = {nt.line, nt.column};
      gens.push_back(g);
      continue;
    } else if (head.text == "d") {
      detail::PendingDifferential pd;
      pd.line = st.peek().line;
      pd.column = st.peek().column;
      pd.name = st.word(cursor, "a generator name");
      st.expect(cursor, "=");
      pd.terms = detail::parse_expression(cursor, st);
      diffs.push_back(std::move(pd));
      continue;
    } else if (head.text == "diag") {
      const int line = st.peek().line, column = st.peek().column;
      const std::string target = st.word(cursor, "a generator name");
      st.expect(cursor, "=");
      bool first = true;
      while (!st.at_end()) {
        Rational sign(1);
        if (st.accept("-"))
          sign = -1;
        else if (!st.accept("+") && !first)
          st.fail(cursor, "expected '+' or '-'");
        first = false;
        detail::PendingDiagonal pd{target, Rational(1), "", "", line, column};
        pd.line = st.peek().line;
        pd.column = st.peek().column;
        if (st.peek().kind == detail::Token::rational ||
            (st.peek().kind == detail::Token::integer && st.i + 1 < st.tokens.size() && st.tokens[st.i + 1].text == "*")) {
          pd.coefficient = detail::token_rational(st.next(cursor));
          st.expect(cursor, "*");
        }
        auto cell = [&]() -> std::string {
          if (st.peek().kind == detail::Token::integer && st.peek().text == "1") {
            st.next(cursor);
            return "1";
          }
          return st.word(cursor, "a generator name or 1");
        };
        pd.left = cell();
        st.expect(cursor, "⊗");
        pd.right = cell();
        pd.coefficient *= sign;
        diags.push_back(pd);
      }
      if (first) throw ParseError(line, column, "empty diagonal");
      continue;
    } else {
      throw ParseError(head.line, head.column, "unknown statement '" + head.text + "'");
    }
    if (!st.at_end()) st.fail(cursor, "unexpected token '" + st.peek().text + "'");
  }

  const Flavor fl = flavor.value_or(Flavor::associative);
  const Grading gr = grading.value_or(fl == Flavor::associative ? Grading::homological : Grading::cohomological);
  Model model;
  model.source = source;
  model.algebra = std::make_shared<FreeDgAlgebra>(fl, gr, gens);
  FreeDgAlgebra& a = *model.algebra;
  a.set_metadata(name, description);
  const int step = gr == Grading::homological ? -1 : 1;

  std::map<std::string, bool> assigned;
  for (const auto& pd : diffs) {
    if (!a.has_generator(pd.name)) throw ParseError(pd.line, pd.column, "unknown generator " + pd.name);
    if (assigned[pd.name]) throw ParseError(pd.line, pd.column, "differential of " + pd.name + " assigned twice");
    assigned[pd.name] = true;
    const int v = a.index_of(pd.name);
    const int target_degree = a.generator(v).degree + step;
    AlgebraElement value = a.zero();
    for (const auto& term : pd.terms) {
      std::vector<int> letters;
      int degree = 0;
      for (const auto& f : term.factors) {
        if (!a.has_generator(f.name)) throw ParseError(f.line, f.column, "unknown generator " + f.name);
        const int g = a.index_of(f.name);
        if (fl == Flavor::commutative && a.generator(g).degree % 2 != 0) {
          const bool repeated = f.exponent > 1 || std::count(letters.begin(), letters.end(), g) > 0;
          if (repeated) throw ParseError(f.line, f.column, "square of the odd generator " + f.name + " vanishes");
        }
        for (int k = 0; k < f.exponent; ++k) letters.push_back(g);
        degree += f.exponent * a.generator(g).degree;
      }
      if (is_zero(term.coefficient)) continue;
      if (degree != target_degree)
        throw ParseError(term.line, term.column,
                         "degree mismatch: term has degree " + std::to_string(degree) + " but d " + pd.name +
                             " must have degree " + std::to_string(target_degree));
      auto normal = a.normalize(letters);
      if (normal) value.add_term(normal->second, normal->first * term.coefficient);
    }
    a.set_differential(v, std::move(value));
  }

  for (const auto& pd : diags) {
    if (!a.has_generator(pd.name)) throw ParseError(pd.line, pd.column, "unknown generator " + pd.name);
    auto cell_index = [&](const std::string& n) {
      if (n == "1") return -1;
      if (!a.has_generator(n)) throw ParseError(pd.line, pd.column, "unknown generator " + n);
      return a.index_of(n);
    };
    const int left = cell_index(pd.left), right = cell_index(pd.right);
    auto cell_dim = [&](int g) { return g < 0 ? 0 : std::abs(a.generator(g).degree) + 1; };
    const int target = a.index_of(pd.name);
    if (cell_dim(left) + cell_dim(right) != cell_dim(target))
      throw ParseError(pd.line, pd.column, "diagonal term has the wrong cell dimension");
    if (left < 0 || right < 0) throw ParseError(pd.line, pd.column, "unit terms of the diagonal are implicit");
    model.diagonal[target].push_back(DiagonalTerm{pd.coefficient, left, right});
  }
  return model;
}

// Canonical text: metadata, flavor, grading, generators in basis order with
// explicit stages, nonzero differentials, diagonals.
inline std::string print_model(const Model& model)
{
  const FreeDgAlgebra& a = *model.algebra;
  std::ostringstream out;
  if (!a.name().empty()) out << "name " << a.name() << "\n";
  if (!a.description().empty()) out << "description " << a.description() << "\n";
  out << "flavor " << to_string(a.flavor()) << "\n";
  out << "grading " << to_string(a.grading()) << "\n";
  for (const auto& g : a.generators()) {
    out << "gen " << g.name << " : " << g.degree << " stage " << g.stage;
    if (g.base) out << " base";
    if (g.auxiliary) out << " aux";
    out << "\n";
  }
  for (std::size_t i = 0; i < a.generator_count(); ++i) {
    const auto& dv = a.differential(static_cast<int>(i));
    if (!dv.is_zero()) out << "d " << a.generator(static_cast<int>(i)).name << " = " << a.to_string(dv) << "\n";
  }
  for (const auto& [g, terms] : model.diagonal) {
    out << "diag " << a.generator(g).name << " =";
    bool first = true;
    for (const auto& t : terms) {
      const bool negative = sgn(t.coefficient) < 0;
      out << (first ? (negative ? " -" : " ") : (negative ? " - " : " + "));
      first = false;
      const Rational mag = abs(t.coefficient);
      if (mag != 1) out << to_string(mag) << " * ";
      out << a.generator(t.left).name << " ⊗ " << a.generator(t.right).name;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace dertower
