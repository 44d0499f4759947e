#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "horpo/ordering.hpp"
#include "horpo/term.hpp"
#include "horpo/type.hpp"
#include "horpo/type_order.hpp"

namespace horpo {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

struct Rule {
  Term lhs, rhs;
  std::size_t line = 0;
};

/// The unit of checking: declarations, ordering parameters, variables and
/// rewrite rules, as written in a problem file.
struct Problem {
  Signature sig;
  SortOrder sort_order;
  Precedence::Pairs prec_greater;
  Precedence::Pairs prec_equal;
  std::vector<std::pair<std::string, Status>> statuses;
  std::vector<std::pair<std::string, Type>> vars;
  std::vector<Rule> rules;

  Environment env() const { return Environment(vars.begin(), vars.end()); }

  StatusMap status_map() const { return StatusMap(statuses.begin(), statuses.end()); }

  /// Types of declarations, variables and every rule subterm.
  TypeUniverse universe() const {
    TypeUniverse u;
    for (const auto& f : sig.funs()) {
      u.add(f.out_type);
      for (const auto& a : f.arg_types) u.add(a);
    }
    for (const auto& [_, t] : vars) u.add(t);
    for (const auto& r : rules) {
      u.add_term(r.lhs);
      u.add_term(r.rhs);
    }
    return u;
  }

  Ordering ordering() const {
    return Ordering(sig, sort_order, prec_greater, prec_equal, status_map(), universe());
  }

  /// The same problem with sort order, precedence and statuses removed.
  Problem without_parameters() const {
    Problem p = *this;
    p.sort_order = {};
    p.prec_greater.clear();
    p.prec_equal.clear();
    p.statuses.clear();
    return p;
  }
};

std::string print_problem(const Problem& p);

inline bool operator==(const Problem& a, const Problem& b) {
  return print_problem(a) == print_problem(b);
}

// ---------------------------------------------------------------------------
// Lexer

namespace detail {

struct Token {
  enum class Kind { Ident, Symbol, End } kind = Kind::End;
  std::string text;
  std::size_t line = 1, column = 1;
};

inline bool ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '\'';
}

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const unsigned char c = src[i];
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = Token::Kind::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (src.substr(i, 2) == "->") {
      t.kind = Token::Kind::Symbol;
      t.text = "->";
      advance(2);
    } else if (src.substr(i, 2) == "\xCE\xBB") {  // λ
      t.kind = Token::Kind::Symbol;
      t.text = "\\";
      advance(2);
    } else if (std::string_view(";:,()[]<>=/\\.@").find(static_cast<char>(c)) != std::string_view::npos) {
      t.kind = Token::Kind::Symbol;
      t.text = std::string(1, static_cast<char>(c));
      advance(1);
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}
  Parser(std::string_view src, const Problem& base) : toks_(tokenize(src)), p_(base) {
    for (const auto& [x, _] : base.vars) declared_vars_.insert(x);
  }

  Term single_term() {
    Term t = term();
    if (!at_end()) fail("unexpected '" + peek().text + "' after term");
    try {
      return infer_type(p_.sig, p_.env(), t);
    } catch (const TypeError& e) {
      throw ParseError(1, 1, std::string("ill-typed term: ") + e.what());
    }
  }

  Problem run() {
    while (!at_end()) statement();
    return std::move(p_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(peek().line, peek().column, what);
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& what) const {
    throw ParseError(t.line, t.column, what);
  }

  bool is_symbol(std::string_view s) const {
    return peek().kind == Token::Kind::Symbol && peek().text == s;
  }
  bool accept(std::string_view s) {
    if (!is_symbol(s)) return false;
    ++pos_;
    return true;
  }
  void expect(std::string_view s) {
    if (!accept(s))
      fail("expected '" + std::string(s) + "'" +
           (at_end() ? std::string(" at end of input") : ", found '" + peek().text + "'"));
  }
  Token ident(std::string_view what) {
    if (peek().kind != Token::Kind::Ident) fail("expected " + std::string(what));
    return toks_[pos_++];
  }
  /// A symbol name: an identifier or `@`.
  Token symbol_name() {
    if (is_symbol("@")) return toks_[pos_++];
    return ident("function symbol");
  }

  void statement() {
    const Token kw = ident("a statement keyword");
    if (kw.text == "sort") sort_decl();
    else if (kw.text == "order") order_decl();
    else if (kw.text == "fun") fun_decl();
    else if (kw.text == "prec") prec_decl();
    else if (kw.text == "status") status_decl();
    else if (kw.text == "var") var_decl();
    else if (kw.text == "rule") rule_decl(kw);
    else fail_at(kw, "unknown statement '" + kw.text + "'");
    expect(";");
  }

  void check_fresh_name(const Token& t) {
    if (p_.sig.find_fun(t.text) || declared_vars_.count(t.text) || p_.sig.find_sort(t.text))
      fail_at(t, "name '" + t.text + "' is already declared");
  }

  void sort_decl() {
    const Token name = ident("sort name");
    check_fresh_name(name);
    std::size_t arity = 0;
    if (accept("/")) {
      const Token n = ident("sort arity");
      try {
        std::size_t used = 0;
        arity = std::stoul(n.text, &used);
        if (used != n.text.size()) throw std::invalid_argument("arity");
      } catch (const std::exception&) {
        fail_at(n, "invalid sort arity '" + n.text + "'");
      }
    }
    p_.sig.add_sort({name.text, arity});
  }

  void known_sort(const Token& t) {
    if (!p_.sig.find_sort(t.text)) fail_at(t, "unknown sort '" + t.text + "'");
  }

  void order_decl() {
    const Token a = ident("sort name");
    known_sort(a);
    const Token op = peek();
    if (!accept("<") && !accept("=") && !accept(">")) fail("expected '<' or '=' in order");
    const Token b = ident("sort name");
    known_sort(b);
    if (op.text == "<") p_.sort_order.less.emplace_back(a.text, b.text);
    else if (op.text == ">") p_.sort_order.less.emplace_back(b.text, a.text);
    else p_.sort_order.equiv.emplace_back(a.text, b.text);
  }

  Type type() {
    Type dom = type_atom();
    if (accept("->")) return Type::arrow(std::move(dom), type());
    return dom;
  }

  Type type_atom() {
    if (accept("(")) {
      Type t = type();
      expect(")");
      return t;
    }
    const Token name = ident("type");
    const SortDecl* s = p_.sig.find_sort(name.text);
    if (!s) fail_at(name, "unknown sort '" + name.text + "'");
    std::vector<Type> args;
    if (accept("(")) {
      do args.push_back(type());
      while (accept(","));
      expect(")");
    }
    if (args.size() != s->arity)
      fail_at(name, "sort '" + name.text + "' expects " + std::to_string(s->arity) + " argument(s), got " +
                        std::to_string(args.size()));
    return Type::data(name.text, std::move(args));
  }

  void fun_decl() {
    const Token name = ident("function symbol");
    check_fresh_name(name);
    expect(":");
    std::vector<Type> args;
    if (accept("[")) {
      if (!accept("]")) {
        do args.push_back(type());
        while (accept(","));
        expect("]");
      }
      expect("->");
    }
    Type out = type();
    p_.sig.add_fun({name.text, std::move(args), std::move(out)});
  }

  void known_symbol(const Token& t) {
    if (t.text != kApp && !p_.sig.find_fun(t.text)) fail_at(t, "unknown function symbol '" + t.text + "'");
  }

  void prec_decl() {
    const Token f = symbol_name();
    known_symbol(f);
    const Token op = peek();
    if (!accept(">") && !accept("=") && !accept("<")) fail("expected '>' or '=' in precedence");
    const Token g = symbol_name();
    known_symbol(g);
    if (op.text == ">") p_.prec_greater.emplace_back(f.text, g.text);
    else if (op.text == "<") p_.prec_greater.emplace_back(g.text, f.text);
    else p_.prec_equal.emplace_back(f.text, g.text);
  }

  void status_decl() {
    const Token f = symbol_name();
    known_symbol(f);
    const Token st = ident("'mul' or 'lex'");
    Status s;
    if (st.text == "mul") s = Status::Mul;
    else if (st.text == "lex") s = Status::Lex;
    else fail_at(st, "status must be 'mul' or 'lex'");
    for (auto& [name, old] : p_.statuses)
      if (name == f.text) {
        old = s;
        return;
      }
    p_.statuses.emplace_back(f.text, s);
  }

  void var_decl() {
    const Token name = ident("variable name");
    check_fresh_name(name);
    expect(":");
    Type t = type();
    declared_vars_.insert(name.text);
    p_.vars.emplace_back(name.text, std::move(t));
  }

  Term term() {
    if (accept("\\")) {
      const Token x = ident("bound variable");
      if (p_.sig.find_fun(x.text)) fail_at(x, "'" + x.text + "' is a function symbol");
      expect(":");
      Type t = type();
      expect(".");
      bound_.push_back(x.text);
      Term body = term();
      bound_.pop_back();
      return Term::abs(x.text, std::move(t), std::move(body));
    }
    if (accept("@")) {
      expect("(");
      std::vector<Term> parts;
      do parts.push_back(term());
      while (accept(","));
      expect(")");
      if (parts.size() < 2) fail("application needs at least two arguments");
      Term head = parts.front();
      parts.erase(parts.begin());
      return Term::apply(std::move(head), parts);
    }
    const Token name = ident("term");
    std::vector<Term> args;
    bool parens = false;
    if (accept("(")) {
      parens = true;
      if (!accept(")")) {
        do args.push_back(term());
        while (accept(","));
        expect(")");
      }
    }
    const bool is_bound = std::find(bound_.begin(), bound_.end(), name.text) != bound_.end();
    if (is_bound || declared_vars_.count(name.text)) {
      if (parens && args.empty()) fail_at(name, "variable '" + name.text + "' applied to nothing");
      return Term::apply(Term::var(name.text), args);
    }
    if (!p_.sig.find_fun(name.text)) fail_at(name, "unknown symbol '" + name.text + "'");
    return Term::fun(name.text, std::move(args));
  }

  void rule_decl(const Token& kw) {
    Term lhs = term();
    expect("->");
    Term rhs = term();
    const Environment env = p_.env();
    Rule r;
    r.line = kw.line;
    try {
      r.lhs = infer_type(p_.sig, env, lhs);
      r.rhs = infer_type(p_.sig, env, rhs);
    } catch (const TypeError& e) {
      fail_at(kw, std::string("ill-typed rule: ") + e.what());
    }
    if (r.lhs.type() != r.rhs.type())
      fail_at(kw, "rule sides have different types: " + r.lhs.type().str() + " and " + r.rhs.type().str());
    for (const auto& [x, _] : r.rhs.free_vars())
      if (!r.lhs.has_free(x))
        fail_at(kw, "free-variable violation: Var(r) ⊆ Var(l) fails for '" + x + "'");
    p_.rules.push_back(std::move(r));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Problem p_;
  std::set<std::string> declared_vars_;
  std::vector<std::string> bound_;
};

}  // namespace detail

/// Parses a problem file. Throws `ParseError` with a position on any
/// syntax, naming, typing or well-formedness error.
inline Problem parse_problem(std::string_view text) { return detail::Parser(text).run(); }

/// Parses and types one term in the rule syntax, using the declarations
/// and variables of `p`.
inline Term parse_term(const Problem& p, std::string_view text) {
  return detail::Parser(text, p).single_term();
}

/// Canonical problem-file text; `parse_problem(print_problem(p)) == p`.
inline std::string print_problem(const Problem& p) {
  std::ostringstream out;
  for (const auto& s : p.sig.sorts()) {
    out << "sort " << s.name;
    if (s.arity) out << " / " << s.arity;
    out << " ;\n";
  }
  for (const auto& [lo, hi] : p.sort_order.less) out << "order " << lo << " < " << hi << " ;\n";
  for (const auto& [a, b] : p.sort_order.equiv) out << "order " << a << " = " << b << " ;\n";
  for (const auto& f : p.sig.funs()) {
    out << "fun " << f.name << " : [";
    for (std::size_t i = 0; i < f.arg_types.size(); ++i) out << (i ? ", " : "") << f.arg_types[i].str();
    out << "] -> " << f.out_type.str() << " ;\n";
  }
  for (const auto& [f, g] : p.prec_greater) out << "prec " << f << " > " << g << " ;\n";
  for (const auto& [f, g] : p.prec_equal) out << "prec " << f << " = " << g << " ;\n";
  for (const auto& [f, s] : p.statuses) out << "status " << f << ' ' << to_string(s) << " ;\n";
  for (const auto& [x, t] : p.vars) out << "var " << x << " : " << t.str() << " ;\n";
  for (const auto& r : p.rules)
    out << "rule " << r.lhs.str(PrintStyle::Source) << " -> " << r.rhs.str(PrintStyle::Source) << " ;\n";
  return out.str();
}

}  // namespace horpo
