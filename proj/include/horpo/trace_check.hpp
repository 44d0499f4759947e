#pragma once

#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "horpo/ordering.hpp"
#include "horpo/term.hpp"
#include "horpo/trace.hpp"

namespace horpo {

/// Replays a proof trace node by node. Every node is checked against its
/// case definition using only the ordering's primitives (type order,
/// precedence, accessibility, substitution); the engine is not consulted.
class TraceChecker {
 public:
  explicit TraceChecker(const Ordering& ord) : ord_(&ord) {}

  /// Checks that `t` proves `lhs >_type rhs` with no bound variables, as
  /// emitted for a rule. Returns the list of problems found.
  std::vector<std::string> check_orientation(const ProofTrace& t, const Term& lhs, const Term& rhs) {
    errors_.clear();
    proves(t, GoalKind::GT_TYPE, {}, lhs, rhs, "root");
    return errors_;
  }

  /// Checks the node and its descendants without a fixed goal.
  std::vector<std::string> check(const ProofTrace& t) {
    errors_.clear();
    node(t, "root");
    return errors_;
  }

 private:
  bool fail(const std::string& where, const std::string& what) {
    errors_.push_back(where + ": " + what);
    return false;
  }

  static std::string node_name(const ProofTrace& t) {
    std::string s(to_string(t.label));
    if (t.lhs.valid()) s += " " + t.lhs.str() + " / " + t.rhs.str();
    return s;
  }

  // Whether `c` is a proof of the goal (kind, x, s, t), then replays it.
  bool proves(const ProofTrace& c, GoalKind kind, const BoundVarSet& x, const Term& s,
              const Term& t, const std::string& where) {
    const bool ordering = is_ordering_case(c.label);
    bool shape = false;
    switch (kind) {
      case GoalKind::GT: shape = ordering && c.kind == GoalKind::GT; break;
      case GoalKind::GT_TYPE: shape = ordering && c.kind == GoalKind::GT_TYPE; break;
      case GoalKind::GE:
        shape = (c.label == CaseLabel::Refl && c.kind == GoalKind::GE) ||
                (ordering && c.kind == GoalKind::GT);
        break;
      case GoalKind::GE_TYPE:
        shape = (c.label == CaseLabel::Refl && c.kind == GoalKind::GE_TYPE) ||
                (ordering && c.kind == GoalKind::GT_TYPE);
        break;
      case GoalKind::ACC_GE_TYPE:
      case GoalKind::ACC_GT_TYPE: shape = c.label == CaseLabel::AccApply && c.kind == kind; break;
    }
    if (!shape)
      return fail(where, "node " + node_name(c) + " cannot prove a " + std::string(to_string(kind)) +
                             " goal");
    if (c.bound != x) return fail(where, "bound variables differ from the goal");
    if (!c.lhs.valid() || !alpha_eq(c.lhs, s) || !alpha_eq(c.rhs, t))
      return fail(where, "node " + node_name(c) + " does not match goal " + s.str() + " / " + t.str());
    return node(c, where);
  }

  bool node(const ProofTrace& t, const std::string& parent) {
    const std::string where = parent + " > " + std::string(to_string(t.label));
    std::size_t aux0 = 0;
    if (t.kind == GoalKind::GT_TYPE) {
      if (t.aux.empty() || t.aux[0].first != "typeCheck")
        return fail(where, "type-checked node without a typeCheck entry");
      if (!ord_->types.ge(t.lhs.type(), t.rhs.type()))
        return fail(where, "type check fails: " + t.lhs.type().str() + " vs " + t.rhs.type().str());
      aux0 = 1;
    }
    auto aux = [&](std::string_view key) -> std::string {
      for (std::size_t i = aux0; i < t.aux.size(); ++i)
        if (t.aux[i].first == key) return t.aux[i].second;
      return {};
    };
    const Term& s = t.lhs;
    const Term& r = t.rhs;
    const BoundVarSet& x = t.bound;
    auto children = [&](std::size_t n) {
      return t.children.size() == n ||
             fail(where, "expected " + std::to_string(n) + " subgoals, found " +
                             std::to_string(t.children.size()));
    };

    if (is_ordering_case(t.label) && s.is_var())
      return fail(where, "variables are not above anything");

    switch (t.label) {
      case CaseLabel::Refl:
        if (!t.children.empty()) return fail(where, "reflexivity has no subgoals");
        return alpha_eq(s, r) || fail(where, "terms are not alpha-equivalent");

      case CaseLabel::C4a: {
        if (!r.is_var()) return fail(where, "right-hand side is not a variable");
        auto it = x.find(r.name());
        if (it == x.end() || it->second != r.type()) return fail(where, r.name() + " is not in X");
        return children(0);
      }

      case CaseLabel::C4b: {
        if (s.is_abs() || !r.is_abs()) return fail(where, "needs a non-abstraction above an abstraction");
        Term z;
        if (!fresh_var_ok(aux("fresh"), r.binder_type(), t, z, where)) return false;
        if (!children(1)) return false;
        BoundVarSet x2 = x;
        x2.emplace(z.name(), z.type());
        return proves(*t.children[0], GoalKind::GT, x2, s, substitute(r.body(), r.name(), z), where);
      }

      case CaseLabel::C1a:
      case CaseLabel::C2a: {
        const bool fun = t.label == CaseLabel::C1a;
        if (fun ? !s.is_fun() : !s.is_app()) return fail(where, "wrong head on the left-hand side");
        const std::size_t i = index(aux("i"));
        if (i == 0 || i > s.children().size()) return fail(where, "bad argument index");
        if (!children(1)) return false;
        return proves(*t.children[0], GoalKind::ACC_GE_TYPE, x, s.children()[i - 1], r, where);
      }

      case CaseLabel::C1b: {
        if (!s.is_fun() || !r.is_fun() || !ord_->prec.eq(s.name(), r.name()))
          return fail(where, "head symbols are not equivalent");
        if (s.args().size() != r.args().size()) return fail(where, "arity differs");
        if (!children(1 + r.args().size())) return false;
        const Status st = ord_->status_of(s.name());
        if (aux("status") != to_string(st)) return fail(where, "wrong status recorded");
        auto rel = [&](const ProofTrace& c, const Term& a, const Term& b, const std::string& w) {
          if (c.label == CaseLabel::AccApply)
            return proves(c, GoalKind::ACC_GT_TYPE, x, a, b, w);
          return proves(c, GoalKind::GT_TYPE, {}, a, b, w);
        };
        const CaseLabel want = st == Status::Mul ? CaseLabel::MulExt : CaseLabel::LexExt;
        if (!extension(*t.children[0], want, x, s.args(), r.args(), rel, where)) return false;
        for (std::size_t j = 0; j < r.args().size(); ++j)
          if (!proves(*t.children[j + 1], GoalKind::GT, x, s, r.args()[j], where)) return false;
        return true;
      }

      case CaseLabel::C1c: {
        if (!s.is_fun()) return fail(where, "left-hand side is not headed by a symbol");
        if (r.is_fun()) {
          if (!ord_->prec.gt(s.name(), r.name())) return fail(where, "precedence does not hold");
        } else if (r.is_app()) {
          if (!ord_->prec.gt(s.name(), kApp)) return fail(where, "precedence over @ does not hold");
        } else {
          return fail(where, "right-hand side is neither an application nor symbol-headed");
        }
        std::vector<Term> goals = r.children();
        if (r.is_app()) {
          // The first subgoal may have been flattened along the spine.
          while (goals.size() < t.children.size() && goals[0].is_app()) {
            Term head = goals[0];
            goals[0] = head.arg_part();
            goals.insert(goals.begin(), head.fun_part());
          }
        }
        if (!children(goals.size())) return false;
        for (std::size_t j = 0; j < goals.size(); ++j)
          if (!proves(*t.children[j], GoalKind::GT, x, s, goals[j], where)) return false;
        return true;
      }

      case CaseLabel::C2b: {
        if (!s.is_app() || !r.is_app()) return fail(where, "needs applications on both sides");
        if (!children(1)) return false;
        auto rel = [&](const ProofTrace& c, const Term& a, const Term& b, const std::string& w) {
          return proves(c, GoalKind::GT_TYPE, x, a, b, w);
        };
        return extension(*t.children[0], CaseLabel::MulExt, x, s.children(), r.children(), rel, where);
      }

      case CaseLabel::C2c: {
        if (!s.is_app() || !s.fun_part().is_abs()) return fail(where, "left-hand side is not a redex");
        if (!children(1)) return false;
        const Term& u = s.fun_part();
        return proves(*t.children[0], GoalKind::GE, x, substitute(u.body(), u.name(), s.arg_part()), r,
                      where);
      }

      case CaseLabel::C3a: {
        if (!s.is_abs()) return fail(where, "left-hand side is not an abstraction");
        Term z;
        if (!fresh_var_ok(aux("fresh"), s.binder_type(), t, z, where)) return false;
        if (!children(1)) return false;
        return proves(*t.children[0], GoalKind::GE_TYPE, x, substitute(s.body(), s.name(), z), r, where);
      }

      case CaseLabel::C3b: {
        if (!s.is_abs() || !r.is_abs()) return fail(where, "needs abstractions on both sides");
        if (!ord_->types.eq(s.binder_type(), r.binder_type()))
          return fail(where, "binder types are not equivalent");
        Term z;
        if (!fresh_var_ok(aux("fresh"), r.binder_type(), t, z, where)) return false;
        if (!children(1)) return false;
        return proves(*t.children[0], GoalKind::GT, x, substitute(s.body(), s.name(), z),
                      substitute(r.body(), r.name(), z), where);
      }

      case CaseLabel::C3c: {
        if (!s.is_abs() || !s.body().is_app()) return fail(where, "left-hand side is not an eta-redex");
        const Term& v = s.body().fun_part();
        const Term& a = s.body().arg_part();
        if (!a.is_var() || a.name() != s.name() || v.has_free(s.name()))
          return fail(where, "left-hand side is not an eta-redex");
        if (!children(1)) return false;
        return proves(*t.children[0], GoalKind::GE, x, v, r, where);
      }

      case CaseLabel::AccApply: return acc_apply(t, where);

      case CaseLabel::MulExt:
      case CaseLabel::LexExt:
      case CaseLabel::TypeCheck:
        return fail(where, "node cannot stand on its own");
    }
    return fail(where, "unknown case");
  }

  bool acc_apply(const ProofTrace& t, const std::string& where) {
    if (t.children.size() != 1) return fail(where, "composite relation needs one subgoal");
    const ProofTrace& c = *t.children[0];
    if (!c.lhs.valid()) return fail(where, "subgoal has no terms");
    std::vector<std::string> names;
    {
      std::istringstream in(t.aux_value("x"));
      for (std::string n; in >> n;) names.push_back(n);
    }
    Term w = c.lhs;
    for (std::size_t k = names.size(); k-- > 0;) {
      if (!w.is_app() || !w.arg_part().is_var() || w.arg_part().name() != names[k])
        return fail(where, "subgoal is not the recorded application");
      auto it = t.bound.find(names[k]);
      if (it == t.bound.end() || it->second != w.arg_part().type())
        return fail(where, names[k] + " is not in X");
      w = w.fun_part();
    }
    if (w.str() != t.aux_value("w")) return fail(where, "recorded w does not match the subgoal");
    const bool strict = t.kind == GoalKind::ACC_GT_TYPE;
    if (strict ? !ord_->acc.acc_gt(t.lhs, w) : !ord_->acc.acc_ge(t.lhs, w))
      return fail(where, w.str() + " is not accessible in " + t.lhs.str());
    if (!ord_->types.eq(c.lhs.type(), t.rhs.type()))
      return fail(where, "applied term's type is not equivalent to the goal's");
    return proves(c, GoalKind::GE, {}, c.lhs, t.rhs, where);
  }

  template <class Rel>
  bool extension(const ProofTrace& e, CaseLabel want, const BoundVarSet& x, const std::vector<Term>& ls,
                 const std::vector<Term>& rs, Rel&& rel, const std::string& parent) {
    const std::string where = parent + " > " + std::string(to_string(e.label));
    if (e.label != want) return fail(where, "expected " + std::string(to_string(want)));
    if (e.bound != x) return fail(where, "bound variables differ from the goal");
    auto same = [](const std::vector<Term>& a, const std::vector<Term>& b) {
      if (a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (!alpha_eq(a[i], b[i])) return false;
      return true;
    };
    if (!same(e.lhs_args, ls) || !same(e.rhs_args, rs)) return fail(where, "arguments do not match");

    if (want == CaseLabel::LexExt) {
      const std::size_t i = index(e.aux_value("index"));
      if (i == 0 || i > ls.size() || ls.size() != rs.size()) return fail(where, "bad index");
      for (std::size_t j = 0; j + 1 < i; ++j)
        if (!alpha_eq(ls[j], rs[j])) return fail(where, "earlier components differ");
      if (e.children.size() != 1) return fail(where, "expected one subgoal");
      return rel(*e.children[0], ls[i - 1], rs[i - 1], where);
    }

    std::vector<std::pair<std::size_t, std::size_t>> steps;
    for (const auto& [k, v] : e.aux) {
      if (k != "dominates") continue;
      const auto gt = v.find('>');
      if (gt == std::string::npos) return fail(where, "bad domination entry");
      const std::size_t from = index(v.substr(0, gt)), to = index(v.substr(gt + 1));
      if (from == 0 || from > ls.size() || to == 0 || to > rs.size()) return fail(where, "bad domination entry");
      steps.emplace_back(from - 1, to - 1);
    }
    if (steps.size() != e.children.size()) return fail(where, "one subgoal per domination step expected");
    std::vector<bool> dominating(ls.size(), false), dominated(rs.size(), false);
    for (const auto& [from, to] : steps) {
      if (dominated[to]) return fail(where, "element dominated twice");
      dominating[from] = dominated[to] = true;
    }
    // Every other right element must cancel against a distinct left
    // element that dominates nothing, and something must remain on the left.
    std::vector<bool> used = dominating;
    std::size_t common = 0;
    for (std::size_t j = 0; j < rs.size(); ++j) {
      if (dominated[j]) continue;
      bool matched = false;
      for (std::size_t i = 0; i < ls.size() && !matched; ++i)
        if (!used[i] && alpha_eq(ls[i], rs[j])) used[i] = matched = true;
      if (!matched) return fail(where, "element " + rs[j].str() + " is neither removed nor dominated");
      ++common;
    }
    if (common >= ls.size()) return fail(where, "nothing remains on the left");
    for (std::size_t k = 0; k < steps.size(); ++k)
      if (!rel(*e.children[k], ls[steps[k].first], rs[steps[k].second], where)) return false;
    return true;
  }

  bool fresh_var_ok(const std::string& entry, const Type& type, const ProofTrace& t, Term& z,
                    const std::string& where) {
    const auto colon = entry.find(':');
    if (colon == std::string::npos || colon == 0) return fail(where, "missing fresh variable");
    const std::string name = entry.substr(0, colon);
    std::set<std::string> taken;
    collect_names(t.lhs, taken);
    collect_names(t.rhs, taken);
    for (const auto& [n, _] : t.bound) taken.insert(n);
    if (taken.count(name)) return fail(where, "variable " + name + " is not fresh");
    z = Term::var(name, type);
    return true;
  }

  static std::size_t index(const std::string& s) {
    if (s.empty() || s.size() > 6) return 0;
    for (char c : s)
      if (c < '0' || c > '9') return 0;
    return static_cast<std::size_t>(std::stoul(s));
  }

  const Ordering* ord_;
  std::vector<std::string> errors_;
};

}  // namespace horpo
