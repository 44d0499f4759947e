#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "horpo/type.hpp"

namespace horpo {

/// Character reserved for generated names; never legal in user identifiers.
inline constexpr char kFreshMarker = '#';

struct FunDecl {
  std::string name;
  std::vector<Type> arg_types;
  Type out_type;

  std::size_t arity() const { return arg_types.size(); }
  friend bool operator==(const FunDecl&, const FunDecl&) = default;
};

/// Sort and function declarations. Lookups are by name.
class Signature {
 public:
  void add_sort(SortDecl s) {
    if (sort_index_.count(s.name)) throw Error("duplicate sort '" + s.name + "'");
    sort_index_.emplace(s.name, sorts_.size());
    sorts_.push_back(std::move(s));
  }

  void add_fun(FunDecl f) {
    if (fun_index_.count(f.name))
      throw Error("duplicate function symbol '" + f.name + "'");
    fun_index_.emplace(f.name, funs_.size());
    funs_.push_back(std::move(f));
  }

  const std::vector<SortDecl>& sorts() const { return sorts_; }
  const std::vector<FunDecl>& funs() const { return funs_; }

  const SortDecl* find_sort(std::string_view name) const {
    auto it = sort_index_.find(std::string(name));
    return it == sort_index_.end() ? nullptr : &sorts_[it->second];
  }
  const FunDecl* find_fun(std::string_view name) const {
    auto it = fun_index_.find(std::string(name));
    return it == fun_index_.end() ? nullptr : &funs_[it->second];
  }
  const FunDecl& fun(std::string_view name) const {
    if (const auto* f = find_fun(name)) return *f;
    throw Error("unknown function symbol '" + std::string(name) + "'");
  }

  /// Throws unless every sort named in `t` is declared with matching arity.
  void check_type(const Type& t) const {
    if (t.is_arrow()) {
      check_type(t.domain());
      check_type(t.codomain());
      return;
    }
    const auto* s = find_sort(t.sort());
    if (!s) throw TypeError("unknown sort '" + t.sort() + "'");
    if (s->arity != t.args().size())
      throw TypeError("sort '" + t.sort() + "' expects " +
                      std::to_string(s->arity) + " argument(s)");
    for (const auto& a : t.args()) check_type(a);
  }

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.sorts_ == b.sorts_ && a.funs_ == b.funs_;
  }

 private:
  std::vector<SortDecl> sorts_;
  std::vector<FunDecl> funs_;
  std::map<std::string, std::size_t> sort_index_;
  std::map<std::string, std::size_t> fun_index_;
};

using Environment = std::map<std::string, Type>;

enum class Category { Abstraction, Prealgebraic, Neutral };

inline std::string_view to_string(Category c) {
  switch (c) {
    case Category::Abstraction: return "abstraction";
    case Category::Prealgebraic: return "prealgebraic";
    case Category::Neutral: return "neutral";
  }
  return "?";
}

/// How terms are printed. `Trace` uses λ and is what traces and reports
/// show; `Source` is the problem-file syntax.
enum class PrintStyle { Trace, Source };

/// Path from the root: child indices (application: 0 = function, 1 =
/// argument; abstraction: 0 = body; function symbol: argument index).
using Position = std::vector<std::size_t>;

/// An algebraic λ-term. Every node carries its type once built through the
/// typed constructors or `infer_type`; raw parser output has no types.
class Term {
 public:
  enum class Kind { Var, Abs, App, Fun };
  using FreeVars = std::vector<std::pair<std::string, Type>>;  // sorted by name

  Term() = default;

  static Term var(std::string name, Type type = {}) {
    auto n = make(Kind::Var);
    n->name = std::move(name);
    n->type = std::move(type);
    n->free_vars = {{n->name, n->type}};
    return Term(std::move(n));
  }

  static Term abs(std::string x, Type x_type, Term body) {
    auto n = make(Kind::Abs);
    n->name = std::move(x);
    n->binder_type = std::move(x_type);
    if (body.typed() && n->binder_type.valid())
      n->type = Type::arrow(n->binder_type, body.type());
    n->size = 1 + body.size();
    n->abstractions = 1 + body.abstractions();
    for (const auto& fv : body.free_vars())
      if (fv.first != n->name) n->free_vars.push_back(fv);
    n->children = {std::move(body)};
    return Term(std::move(n));
  }

  /// Binary application; the type is the codomain of the function's type.
  static Term app(Term f, Term a) {
    auto n = make(Kind::App);
    if (f.typed() && f.type().is_arrow()) n->type = f.type().codomain();
    n->children = {std::move(f), std::move(a)};
    finish(*n);
    return Term(std::move(n));
  }

  /// Left-nested application `@(...@(head, args[0])..., args[k-1])`.
  static Term apply(Term head, const std::vector<Term>& args) {
    for (const auto& a : args) head = app(std::move(head), a);
    return head;
  }

  static Term fun(std::string f, std::vector<Term> args, Type out = {}) {
    auto n = make(Kind::Fun);
    n->name = std::move(f);
    n->type = std::move(out);
    n->children = std::move(args);
    finish(*n);
    return Term(std::move(n));
  }

  static Term fun(const FunDecl& f, std::vector<Term> args) {
    return fun(f.name, std::move(args), f.out_type);
  }

  bool valid() const { return node_ != nullptr; }
  Kind kind() const { return node_->kind; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_abs() const { return kind() == Kind::Abs; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_fun() const { return kind() == Kind::Fun; }

  /// Variable name, binder name, or function symbol.
  const std::string& name() const { return node_->name; }
  const Type& binder_type() const { return node_->binder_type; }
  const Term& body() const { return node_->children[0]; }
  const Term& fun_part() const { return node_->children[0]; }
  const Term& arg_part() const { return node_->children[1]; }
  const std::vector<Term>& children() const { return node_->children; }
  /// Arguments of a function-symbol term.
  const std::vector<Term>& args() const { return node_->children; }

  const Type& type() const { return node_->type; }
  bool typed() const { return node_ && node_->type.valid(); }
  std::size_t size() const { return node_->size; }
  std::size_t abstractions() const { return node_->abstractions; }
  const FreeVars& free_vars() const { return node_->free_vars; }

  bool has_free(std::string_view x) const {
    const auto& fv = free_vars();
    auto it = std::lower_bound(
        fv.begin(), fv.end(), x,
        [](const auto& p, std::string_view v) { return p.first < v; });
    return it != fv.end() && it->first == x;
  }

  /// Identity of the shared node; equal pointers imply equal terms.
  const void* id() const { return node_.get(); }

  std::string str(PrintStyle style = PrintStyle::Trace) const {
    std::string out;
    print(out, style);
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Term& t) {
    return os << t.str();
  }

  /// Rebuilds this node with new children, keeping symbol and annotation.
  Term with_children(std::vector<Term> kids) const {
    switch (kind()) {
      case Kind::Var: return *this;
      case Kind::Abs: return abs(name(), binder_type(), std::move(kids[0]));
      case Kind::App: {
        Term t = app(std::move(kids[0]), std::move(kids[1]));
        if (!t.typed() && typed()) return t.retyped(type());
        return t;
      }
      case Kind::Fun: return fun(name(), std::move(kids), type());
    }
    return *this;
  }

 private:
  struct Node {
    Kind kind = Kind::Var;
    std::string name;
    Type binder_type;
    Type type;
    std::vector<Term> children;
    std::size_t size = 1;
    std::size_t abstractions = 0;
    FreeVars free_vars;
  };

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<Node> make(Kind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
  }

  static void finish(Node& n) {
    n.size = 1;
    n.abstractions = 0;
    for (const auto& c : n.children) {
      n.size += c.size();
      n.abstractions += c.abstractions();
      merge_free(n.free_vars, c.free_vars());
    }
  }

  static void merge_free(FreeVars& into, const FreeVars& from) {
    if (from.empty()) return;
    if (into.empty()) {
      into = from;
      return;
    }
    FreeVars merged;
    merged.reserve(into.size() + from.size());
    std::size_t i = 0, j = 0;
    while (i < into.size() || j < from.size()) {
      if (j == from.size() || (i < into.size() && into[i].first < from[j].first)) {
        merged.push_back(into[i++]);
      } else if (i == into.size() || from[j].first < into[i].first) {
        merged.push_back(from[j++]);
      } else {
        merged.push_back(into[i++]);
        ++j;
      }
    }
    into = std::move(merged);
  }

  Term retyped(Type t) const {
    auto n = std::make_shared<Node>(*node_);
    n->type = std::move(t);
    return Term(std::move(n));
  }

  void print(std::string& out, PrintStyle style) const {
    switch (kind()) {
      case Kind::Var:
        out += name();
        return;
      case Kind::Abs: {
        const bool paren = binder_type().valid() && binder_type().is_arrow();
        if (style == PrintStyle::Trace) {
          out += "\xCE\xBB";  // λ
          out += name();
          out += ':';
          if (paren) out += '(';
          out += binder_type().str("\xE2\x86\x92");  // →
          if (paren) out += ')';
          out += '.';
        } else {
          out += '\\';
          out += name();
          out += ':';
          if (paren) out += '(';
          out += binder_type().str(" -> ");
          if (paren) out += ')';
          out += ". ";
        }
        body().print(out, style);
        return;
      }
      case Kind::App:
        out += "@(";
        fun_part().print(out, style);
        out += ',';
        arg_part().print(out, style);
        out += ')';
        return;
      case Kind::Fun:
        out += name();
        if (!args().empty()) {
          out += '(';
          for (std::size_t i = 0; i < args().size(); ++i) {
            if (i) out += ',';
            args()[i].print(out, style);
          }
          out += ')';
        }
        return;
    }
  }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Names

/// `base` with any generated suffix removed, then the first `base#k` not in
/// `avoid`. Deterministic.
inline std::string fresh_var(std::string_view base,
                             const std::set<std::string>& avoid) {
  std::string stem(base.substr(0, base.find(kFreshMarker)));
  for (std::size_t k = 0;; ++k) {
    std::string candidate = stem + kFreshMarker + std::to_string(k);
    if (!avoid.count(candidate)) return candidate;
  }
}

/// Free and bound variable names of `t`.
inline void collect_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var: out.insert(t.name()); return;
    case Term::Kind::Abs: out.insert(t.name()); break;
    default: break;
  }
  for (const auto& c : t.children()) collect_names(c, out);
}

inline std::set<std::string> free_var_names(const Term& t) {
  std::set<std::string> out;
  for (const auto& [x, _] : t.free_vars()) out.insert(x);
  return out;
}

inline bool free_vars_subset(const Term& small, const Term& big) {
  for (const auto& [x, _] : small.free_vars())
    if (!big.has_free(x)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Typing

/// Equivalence used by relaxed typing, where an argument may have any type
/// equivalent to the expected domain.
using TypeEquivalence = std::function<bool(const Type&, const Type&)>;

namespace detail {

inline Term infer(const Signature& sig, Environment& env, const Term& t,
                  const TypeEquivalence* relaxed) {
  auto same = [&](const Type& a, const Type& b) {
    return a == b || (relaxed && (*relaxed)(a, b));
  };
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = env.find(t.name());
      if (it == env.end())
        throw TypeError("unbound variable '" + t.name() + "'");
      return Term::var(t.name(), it->second);
    }
    case Term::Kind::Abs: {
      sig.check_type(t.binder_type());
      std::optional<Type> shadowed;
      if (auto it = env.find(t.name()); it != env.end()) shadowed = it->second;
      env[t.name()] = t.binder_type();
      Term body;
      try {
        body = infer(sig, env, t.body(), relaxed);
      } catch (...) {
        if (shadowed) env[t.name()] = *shadowed; else env.erase(t.name());
        throw;
      }
      if (shadowed) env[t.name()] = *shadowed; else env.erase(t.name());
      return Term::abs(t.name(), t.binder_type(), std::move(body));
    }
    case Term::Kind::App: {
      Term f = infer(sig, env, t.fun_part(), relaxed);
      Term a = infer(sig, env, t.arg_part(), relaxed);
      if (!f.type().is_arrow())
        throw TypeError("cannot apply " + f.str() + " of non-functional type " +
                        f.type().str());
      if (!same(f.type().domain(), a.type()))
        throw TypeError("argument " + a.str() + " has type " + a.type().str() +
                        " but " + f.str() + " expects " +
                        f.type().domain().str());
      return Term::app(std::move(f), std::move(a));
    }
    case Term::Kind::Fun: {
      const FunDecl* decl = sig.find_fun(t.name());
      if (!decl) throw TypeError("unknown function symbol '" + t.name() + "'");
      if (decl->arity() != t.args().size())
        throw TypeError("'" + t.name() + "' expects " +
                        std::to_string(decl->arity()) + " argument(s), got " +
                        std::to_string(t.args().size()));
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        Term a = infer(sig, env, t.args()[i], relaxed);
        if (!same(decl->arg_types[i], a.type()))
          throw TypeError("argument " + std::to_string(i + 1) + " of '" +
                          t.name() + "' has type " + a.type().str() +
                          ", expected " + decl->arg_types[i].str());
        args.push_back(std::move(a));
      }
      return Term::fun(*decl, std::move(args));
    }
  }
  throw TypeError("malformed term");
}

}  // namespace detail

/// Types `t` under `env` and returns it with every node annotated. With
/// `relaxed`, argument types only need to be equivalent to the expected ones.
inline Term infer_type(const Signature& sig, const Environment& env,
                       const Term& t, const TypeEquivalence* relaxed = nullptr) {
  Environment scratch = env;
  return detail::infer(sig, scratch, t, relaxed);
}

inline Category categorize(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Abs: return Category::Abstraction;
    case Term::Kind::Fun: return Category::Prealgebraic;
    default: return Category::Neutral;
  }
}

inline std::size_t count_abstractions(const Term& t) { return t.abstractions(); }

// ---------------------------------------------------------------------------
// Substitution

using Substitution = std::map<std::string, Term>;

namespace detail {

inline Term subst(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = s.find(t.name());
      return it == s.end() ? t : it->second;
    }
    case Term::Kind::Abs: {
      Substitution inner;
      for (const auto& [x, u] : s)
        if (x != t.name() && t.body().has_free(x)) inner.emplace(x, u);
      if (inner.empty()) return t;
      bool captures = false;
      for (const auto& [_, u] : inner)
        if (u.has_free(t.name())) captures = true;
      if (!captures)
        return Term::abs(t.name(), t.binder_type(), subst(t.body(), inner));
      std::set<std::string> avoid = free_var_names(t.body());
      avoid.insert(t.name());
      for (const auto& [x, u] : inner) {
        avoid.insert(x);
        for (const auto& [y, _] : u.free_vars()) avoid.insert(y);
      }
      std::string renamed = fresh_var(t.name(), avoid);
      inner.emplace(t.name(), Term::var(renamed, t.binder_type()));
      return Term::abs(renamed, t.binder_type(), subst(t.body(), inner));
    }
    default: {
      bool changed = false;
      std::vector<Term> kids;
      kids.reserve(t.children().size());
      for (const auto& c : t.children()) {
        kids.push_back(subst(c, s));
        changed |= kids.back().id() != c.id();
      }
      return changed ? t.with_children(std::move(kids)) : t;
    }
  }
}

}  // namespace detail

/// Capture-avoiding substitution; bound variables are renamed with
/// `fresh_var` when a replacement would be captured.
inline Term substitute(const Term& t, const Substitution& s) {
  Substitution relevant;
  for (const auto& [x, u] : s)
    if (t.has_free(x)) relevant.emplace(x, u);
  return detail::subst(t, relevant);
}

inline Term substitute(const Term& t, const std::string& x, const Term& u) {
  return substitute(t, Substitution{{x, u}});
}

// ---------------------------------------------------------------------------
// Alpha-equivalence and canonical keys

namespace detail {

using Binders = std::vector<std::string>;

inline long binder_index(const Binders& b, const std::string& x) {
  for (std::size_t i = b.size(); i-- > 0;)
    if (b[i] == x) return static_cast<long>(b.size() - 1 - i);
  return -1;
}

inline bool alpha(const Term& s, const Term& t, Binders& bs, Binders& bt) {
  if (s.id() == t.id() && bs.empty() && bt.empty()) return true;
  if (s.kind() != t.kind()) return false;
  switch (s.kind()) {
    case Term::Kind::Var: {
      long i = binder_index(bs, s.name());
      long j = binder_index(bt, t.name());
      if (i != j) return false;
      return i >= 0 || s.name() == t.name();
    }
    case Term::Kind::Abs: {
      if (s.binder_type() != t.binder_type()) return false;
      bs.push_back(s.name());
      bt.push_back(t.name());
      bool r = alpha(s.body(), t.body(), bs, bt);
      bs.pop_back();
      bt.pop_back();
      return r;
    }
    case Term::Kind::Fun:
      if (s.name() != t.name() || s.args().size() != t.args().size())
        return false;
      [[fallthrough]];
    case Term::Kind::App:
      for (std::size_t i = 0; i < s.children().size(); ++i)
        if (!alpha(s.children()[i], t.children()[i], bs, bt)) return false;
      return true;
  }
  return false;
}

inline void canonical(const Term& t, Binders& bs, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      long i = binder_index(bs, t.name());
      if (i >= 0) {
        out += '^';
        out += std::to_string(i);
      } else {
        out += t.name();
        out += ':';
        out += t.type().valid() ? t.type().str("~") : "?";
      }
      return;
    }
    case Term::Kind::Abs:
      out += "\\:";
      out += t.binder_type().str("~");
      out += '.';
      bs.push_back(t.name());
      canonical(t.body(), bs, out);
      bs.pop_back();
      return;
    case Term::Kind::App:
      out += "@(";
      canonical(t.fun_part(), bs, out);
      out += ',';
      canonical(t.arg_part(), bs, out);
      out += ')';
      return;
    case Term::Kind::Fun:
      out += t.name();
      out += '(';
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out += ',';
        canonical(t.args()[i], bs, out);
      }
      out += ')';
      return;
  }
}

}  // namespace detail

/// Equality up to renaming of bound variables.
inline bool alpha_eq(const Term& s, const Term& t) {
  detail::Binders bs, bt;
  return detail::alpha(s, t, bs, bt);
}

/// A string identifying the alpha-equivalence class of `t` (free variables
/// keep their names and types).
inline std::string canonical_key(const Term& t) {
  std::string out;
  detail::Binders bs;
  detail::canonical(t, bs, out);
  return out;
}

// ---------------------------------------------------------------------------
// Positions and spines

inline void for_each_subterm(
    const Term& t, const std::function<void(const Term&, const Position&)>& fn) {
  Position p;
  std::function<void(const Term&)> go = [&](const Term& u) {
    fn(u, p);
    for (std::size_t i = 0; i < u.children().size(); ++i) {
      p.push_back(i);
      go(u.children()[i]);
      p.pop_back();
    }
  };
  go(t);
}

inline const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t i : p) cur = &cur->children().at(i);
  return *cur;
}

/// `t` with the subterm at `p` replaced by `u` (no renaming: a context may
/// capture free variables of `u`).
inline Term replace_at(const Term& t, const Position& p, const Term& u,
                       std::size_t depth = 0) {
  if (depth == p.size()) return u;
  std::vector<Term> kids = t.children();
  kids.at(p[depth]) = replace_at(kids[p[depth]], p, u, depth + 1);
  return t.with_children(std::move(kids));
}

/// Names bound by abstractions on the path to `p`.
inline std::set<std::string> binders_above(const Term& t, const Position& p) {
  std::set<std::string> out;
  const Term* cur = &t;
  for (std::size_t i : p) {
    if (cur->is_abs()) out.insert(cur->name());
    cur = &cur->children().at(i);
  }
  return out;
}

/// Head and arguments of a left-nested application chain.
inline std::pair<Term, std::vector<Term>> app_spine(const Term& t) {
  std::vector<Term> args;
  Term head = t;
  while (head.is_app()) {
    args.push_back(head.arg_part());
    head = head.fun_part();
  }
  std::reverse(args.begin(), args.end());
  return {head, args};
}

}  // namespace horpo
