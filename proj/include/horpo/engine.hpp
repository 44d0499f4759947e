#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "horpo/extension.hpp"
#include "horpo/ordering.hpp"
#include "horpo/term.hpp"
#include "horpo/trace.hpp"

namespace horpo {

/// Raised when a derivation exceeds the recursion guard. The guard is far
/// above what the termination measure allows, so this indicates a bug.
class EngineError : public Error {
 public:
  using Error::Error;
};

struct EngineOptions {
  /// Cases the engine must not use (mutation testing only).
  std::set<CaseLabel> disabled;
  /// Overrides the computed recursion guard when set.
  std::optional<std::size_t> max_depth;
};

/// Decision procedure for the ordering. One engine owns one memo table;
/// engines are cheap and not thread-safe, so use one per thread.
///
/// Cases are tried in a fixed order and the first success is recorded:
/// 4a; then by head of the left-hand side 1b, 1c, 1a / 2b, 2c, 2a /
/// 3b, 3c, 3a; then 4b. Success does not depend on the order since every
/// case is tried before failing.
class Engine {
 public:
  explicit Engine(const Ordering& ord, EngineOptions opts = {})
      : ord_(&ord), opts_(std::move(opts)) {}

  /// `s >^X t`.
  TracePtr gt(const BoundVarSet& x, const Term& s, const Term& t) {
    Guard g(*this, s, t, true);
    return memo(GoalKind::GT, x, s, t, [&] { return gt_cases(x, s, t); });
  }

  /// Reflexive closure: alpha-equivalent, or `s >^X t`.
  TracePtr ge(const BoundVarSet& x, const Term& s, const Term& t) {
    Guard g(*this, s, t);
    return memo(GoalKind::GE, x, s, t, [&]() -> TracePtr {
      if (alpha_eq(s, t)) return refl(x, s, t, GoalKind::GE);
      return gt(x, s, t);
    });
  }

  /// `s >^X t` with the type of `s` at least the type of `t`.
  TracePtr gt_type(const BoundVarSet& x, const Term& s, const Term& t) {
    Guard g(*this, s, t);
    return memo(GoalKind::GT_TYPE, x, s, t, [&]() -> TracePtr {
      if (!ord_->types.ge(s.type(), t.type())) return nullptr;
      TracePtr p = gt(x, s, t);
      if (!p) return nullptr;
      auto node = std::make_shared<ProofTrace>(*p);
      node->kind = GoalKind::GT_TYPE;
      node->aux.insert(node->aux.begin(),
                       {"typeCheck", s.type().str() + " >= " + t.type().str()});
      return node;
    });
  }

  TracePtr ge_type(const BoundVarSet& x, const Term& s, const Term& t) {
    Guard g(*this, s, t);
    return memo(GoalKind::GE_TYPE, x, s, t, [&]() -> TracePtr {
      if (alpha_eq(s, t)) return refl(x, s, t, GoalKind::GE_TYPE);
      return gt_type(x, s, t);
    });
  }

  /// Composite relation: `s ⊵acc w` (strictly, `s ▹acc w`, when `strict`),
  /// `@(w, xs)` with `xs` drawn from `x` has a type equivalent to the type
  /// of `t`, and `@(w, xs) ≥ t` with no bound variables.
  TracePtr acc_apply(const BoundVarSet& x, const Term& s, const Term& t, bool strict) {
    Guard g(*this, s, t);
    const GoalKind kind = strict ? GoalKind::ACC_GT_TYPE : GoalKind::ACC_GE_TYPE;
    return memo(kind, x, s, t, [&]() -> TracePtr {
      std::vector<Term> candidates;
      if (!strict) candidates.push_back(s);
      for (auto& v : ord_->acc.strict_candidates(s)) candidates.push_back(std::move(v));
      for (const auto& w : candidates) {
        if (auto p = apply_vars(x, s, t, w, kind)) return p;
      }
      return nullptr;
    });
  }

  /// The top-level check for a rule: `l >^∅_type r`.
  TracePtr orient(const Term& lhs, const Term& rhs) { return gt_type({}, lhs, rhs); }

  std::size_t memo_entries() const { return memo_.size(); }
  std::size_t max_depth_reached() const { return max_depth_seen_; }
  void clear() { memo_.clear(); }

  const Ordering& ordering() const { return *ord_; }

 private:
  // Tracks nesting of relation calls. The outermost call fixes the guard
  // from its goal; only `gt` steps count towards it.
  struct Guard {
    Engine& e;
    bool counts;
    Guard(Engine& engine, const Term& s, const Term& t, bool is_gt = false)
        : e(engine), counts(is_gt) {
      if (e.entries_++ == 0) {
        e.limit_ = e.opts_.max_depth.value_or(4 * (s.size() + t.size()) * (1 + t.abstractions()));
        e.depth_ = 0;
      }
      if (!counts) return;
      if (++e.depth_ > e.limit_) {
        --e.depth_;
        --e.entries_;
        throw EngineError("recursion guard exceeded comparing " + s.str() + " and " + t.str());
      }
      if (e.depth_ > e.max_depth_seen_) e.max_depth_seen_ = e.depth_;
    }
    ~Guard() {
      if (counts) --e.depth_;
      --e.entries_;
    }
  };

  bool enabled(CaseLabel c) const { return !opts_.disabled.count(c); }

  template <class F>
  TracePtr memo(GoalKind kind, const BoundVarSet& x, const Term& s, const Term& t, F&& compute) {
    std::string key = memo_key(kind, x, s, t);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    TracePtr result = compute();
    memo_.emplace(std::move(key), result);
    return result;
  }

  static std::string memo_key(GoalKind kind, const BoundVarSet& x, const Term& s, const Term& t) {
    std::string key(to_string(kind));
    key += '|';
    for (const auto& [name, type] : x) {
      key += name;
      key += ':';
      key += type.str("~");
      key += ',';
    }
    key += '|';
    key += canonical_key(s);
    key += '|';
    key += canonical_key(t);
    return key;
  }

  static TracePtr refl(const BoundVarSet& x, const Term& s, const Term& t, GoalKind kind) {
    auto n = std::make_shared<ProofTrace>();
    n->label = CaseLabel::Refl;
    n->kind = kind;
    n->bound = x;
    n->lhs = s;
    n->rhs = t;
    return n;
  }

  static std::shared_ptr<ProofTrace> node(CaseLabel label, const BoundVarSet& x, const Term& s,
                                          const Term& t) {
    auto n = std::make_shared<ProofTrace>();
    n->label = label;
    n->kind = GoalKind::GT;
    n->bound = x;
    n->lhs = s;
    n->rhs = t;
    return n;
  }

  std::string fresh(std::string_view base, const BoundVarSet& x, const Term& s, const Term& t) const {
    std::set<std::string> avoid;
    collect_names(s, avoid);
    collect_names(t, avoid);
    for (const auto& [name, _] : x) avoid.insert(name);
    return fresh_var(base, avoid);
  }

  static std::string bound_str(const std::string& name, const Type& type) {
    return name + ":" + type.str();
  }

  TracePtr gt_cases(const BoundVarSet& x, const Term& s, const Term& t) {
    if (s.is_var()) return nullptr;
    if (enabled(CaseLabel::C4a) && t.is_var() && x.count(t.name()))
      return node(CaseLabel::C4a, x, s, t);
    TracePtr p;
    switch (s.kind()) {
      case Term::Kind::Fun: p = fun_cases(x, s, t); break;
      case Term::Kind::App: p = app_cases(x, s, t); break;
      case Term::Kind::Abs: p = abs_cases(x, s, t); break;
      case Term::Kind::Var: break;
    }
    if (p) return p;
    if (enabled(CaseLabel::C4b) && !s.is_abs() && t.is_abs()) {
      const std::string z = fresh(t.name(), x, s, t);
      BoundVarSet x2 = x;
      x2.emplace(z, t.binder_type());
      const Term body = substitute(t.body(), t.name(), Term::var(z, t.binder_type()));
      if (TracePtr c = gt(x2, s, body)) {
        auto n = node(CaseLabel::C4b, x, s, t);
        n->aux.emplace_back("fresh", bound_str(z, t.binder_type()));
        n->children.push_back(std::move(c));
        return n;
      }
    }
    return nullptr;
  }

  // Case 1: left-hand side headed by a function symbol.
  TracePtr fun_cases(const BoundVarSet& x, const Term& s, const Term& t) {
    const std::string& f = s.name();
    const bool t_fun = t.is_fun();
    if (enabled(CaseLabel::C1b) && t_fun && ord_->prec.eq(f, t.name())) {
      if (TracePtr p = case_1b(x, s, t)) return p;
    }
    if (enabled(CaseLabel::C1c) && (t_fun || t.is_app()) &&
        ord_->prec.gt(f, t_fun ? std::string_view(t.name()) : kApp)) {
      if (TracePtr p = case_1c(x, s, t)) return p;
    }
    if (enabled(CaseLabel::C1a)) {
      for (std::size_t i = 0; i < s.args().size(); ++i) {
        if (TracePtr c = acc_apply(x, s.args()[i], t, false)) {
          auto n = node(CaseLabel::C1a, x, s, t);
          n->aux.emplace_back("i", std::to_string(i + 1));
          n->children.push_back(std::move(c));
          return n;
        }
      }
    }
    return nullptr;
  }

  TracePtr case_1b(const BoundVarSet& x, const Term& s, const Term& t) {
    const std::string& f = s.name();
    if (s.args().size() != t.args().size()) return nullptr;
    const Status st = ord_->status_of(f);
    auto rel = [&](const Term& a, const Term& b) -> TracePtr {
      if (TracePtr p = gt_type({}, a, b)) return p;
      return acc_apply(x, a, b, true);
    };
    auto n = node(CaseLabel::C1b, x, s, t);
    n->aux.emplace_back("status", std::string(to_string(st)));
    TracePtr ext = st == Status::Mul ? mul_node(s.args(), t.args(), x, rel)
                                     : lex_node(s.args(), t.args(), x, rel);
    if (!ext) return nullptr;
    n->children.push_back(std::move(ext));
    for (const auto& tj : t.args()) {
      TracePtr c = gt(x, s, tj);
      if (!c) return nullptr;
      n->children.push_back(std::move(c));
    }
    return n;
  }

  TracePtr case_1c(const BoundVarSet& x, const Term& s, const Term& t) {
    auto n = node(CaseLabel::C1c, x, s, t);
    n->aux.emplace_back("precedence", s.name() + " > " + (t.is_fun() ? t.name() : std::string(kApp)));
    for (std::size_t j = 0; j < t.children().size(); ++j) {
      TracePtr c = gt(x, s, t.children()[j]);
      if (!c) return nullptr;
      // Application spines are shown flat: a first child that is itself a
      // precedence step on an application contributes its subgoals directly.
      if (t.is_app() && j == 0 && c->label == CaseLabel::C1c && c->kind == GoalKind::GT &&
          c->rhs.is_app()) {
        for (const auto& cc : c->children) n->children.push_back(cc);
      } else {
        n->children.push_back(std::move(c));
      }
    }
    return n;
  }

  // Case 2: left-hand side headed by an application.
  TracePtr app_cases(const BoundVarSet& x, const Term& s, const Term& t) {
    const Term& u = s.fun_part();
    const Term& v = s.arg_part();
    if (enabled(CaseLabel::C2b) && t.is_app()) {
      auto rel = [&](const Term& a, const Term& b) { return gt_type(x, a, b); };
      if (TracePtr ext = mul_node({u, v}, {t.fun_part(), t.arg_part()}, x, rel)) {
        auto n = node(CaseLabel::C2b, x, s, t);
        n->children.push_back(std::move(ext));
        return n;
      }
    }
    if (enabled(CaseLabel::C2c) && u.is_abs()) {
      const Term reduct = substitute(u.body(), u.name(), v);
      if (TracePtr c = ge(x, reduct, t)) {
        auto n = node(CaseLabel::C2c, x, s, t);
        n->children.push_back(std::move(c));
        return n;
      }
    }
    if (enabled(CaseLabel::C2a)) {
      for (std::size_t side = 0; side < 2; ++side) {
        if (TracePtr c = acc_apply(x, s.children()[side], t, false)) {
          auto n = node(CaseLabel::C2a, x, s, t);
          n->aux.emplace_back("i", std::to_string(side + 1));
          n->children.push_back(std::move(c));
          return n;
        }
      }
    }
    return nullptr;
  }

  // Case 3: left-hand side is an abstraction.
  TracePtr abs_cases(const BoundVarSet& x, const Term& s, const Term& t) {
    const Term& u = s.body();
    if (enabled(CaseLabel::C3b) && t.is_abs() && ord_->types.eq(s.binder_type(), t.binder_type())) {
      const std::string z = fresh(t.name(), x, s, t);
      const Term zv = Term::var(z, t.binder_type());
      const Term lhs = substitute(u, s.name(), zv);
      const Term rhs = substitute(t.body(), t.name(), zv);
      if (TracePtr c = gt(x, lhs, rhs)) {
        auto n = node(CaseLabel::C3b, x, s, t);
        n->aux.emplace_back("fresh", bound_str(z, t.binder_type()));
        n->children.push_back(std::move(c));
        return n;
      }
    }
    if (enabled(CaseLabel::C3c) && u.is_app() && u.arg_part().is_var() &&
        u.arg_part().name() == s.name() && !u.fun_part().has_free(s.name())) {
      if (TracePtr c = ge(x, u.fun_part(), t)) {
        auto n = node(CaseLabel::C3c, x, s, t);
        n->children.push_back(std::move(c));
        return n;
      }
    }
    if (enabled(CaseLabel::C3a)) {
      const std::string z = fresh(s.name(), x, s, t);
      const Term body = substitute(u, s.name(), Term::var(z, s.binder_type()));
      if (TracePtr c = ge_type(x, body, t)) {
        auto n = node(CaseLabel::C3a, x, s, t);
        n->aux.emplace_back("fresh", bound_str(z, s.binder_type()));
        n->children.push_back(std::move(c));
        return n;
      }
    }
    return nullptr;
  }

  TracePtr apply_vars(const BoundVarSet& x, const Term& s, const Term& t, const Term& w,
                      GoalKind kind) {
    // Breadth-first over the number of applied variables, so that the
    // shortest vector is found first; repetitions are allowed.
    std::vector<std::vector<std::string>> layer{{}};
    const std::size_t depth = w.type().arrow_depth();
    for (std::size_t k = 0; k <= depth && !layer.empty(); ++k) {
      std::vector<std::vector<std::string>> next;
      for (const auto& names : layer) {
        std::vector<Term> xs;
        for (const auto& name : names) xs.push_back(Term::var(name, x.at(name)));
        const Term applied = Term::apply(w, xs);
        if (ord_->types.eq(applied.type(), t.type())) {
          if (TracePtr c = ge({}, applied, t)) {
            auto n = std::make_shared<ProofTrace>();
            n->label = CaseLabel::AccApply;
            n->kind = kind;
            n->bound = x;
            n->lhs = s;
            n->rhs = t;
            n->aux.emplace_back("w", w.str());
            std::string vars;
            for (const auto& name : names) vars += (vars.empty() ? "" : " ") + name;
            n->aux.emplace_back("x", vars);
            n->children.push_back(std::move(c));
            return n;
          }
        }
        if (k == depth) continue;
        const Type& dom = applied.type().domain();
        for (const auto& [name, type] : x) {
          if (!ord_->types.eq(type, dom)) continue;
          auto ext = names;
          ext.push_back(name);
          next.push_back(std::move(ext));
        }
      }
      layer = std::move(next);
    }
    return nullptr;
  }

  template <class Rel>
  TracePtr mul_node(const std::vector<Term>& ss, const std::vector<Term>& ts, const BoundVarSet& x,
                    Rel&& rel) {
    auto w = mul_ext(ss, ts, [](const Term& a, const Term& b) { return alpha_eq(a, b); }, rel);
    if (!w) return nullptr;
    auto n = std::make_shared<ProofTrace>();
    n->label = CaseLabel::MulExt;
    n->bound = x;
    n->lhs_args = ss;
    n->rhs_args = ts;
    for (auto& step : w->steps) {
      n->aux.emplace_back("dominates", std::to_string(step.from + 1) + ">" + std::to_string(step.to + 1));
      n->children.push_back(std::move(step.proof));
    }
    return n;
  }

  template <class Rel>
  TracePtr lex_node(const std::vector<Term>& ss, const std::vector<Term>& ts, const BoundVarSet& x,
                    Rel&& rel) {
    auto w = lex_ext(ss, ts, [](const Term& a, const Term& b) { return alpha_eq(a, b); }, rel);
    if (!w) return nullptr;
    auto n = std::make_shared<ProofTrace>();
    n->label = CaseLabel::LexExt;
    n->bound = x;
    n->lhs_args = ss;
    n->rhs_args = ts;
    n->aux.emplace_back("index", std::to_string(w->index + 1));
    n->children.push_back(std::move(w->proof));
    return n;
  }

  const Ordering* ord_;
  EngineOptions opts_;
  std::unordered_map<std::string, TracePtr> memo_;
  std::size_t depth_ = 0;
  std::size_t entries_ = 0;
  std::size_t limit_ = 0;
  std::size_t max_depth_seen_ = 0;
};

}  // namespace horpo
