#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <functional>
#include <unordered_set>
#include <vector>

#include "horpo/term.hpp"
#include "horpo/type_order.hpp"

namespace horpo {

/// Argument positions (0-based) of `f` that are accessible: every data type
/// occurring in the argument type is at most the output type, and those
/// equivalent to it occur only positively. Empty when the output type is not
/// a data type.
inline std::set<std::size_t> acc_indices(const FunDecl& f, const TypeOrder& order) {
  std::set<std::size_t> out;
  if (!f.out_type.is_data()) return out;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    std::vector<Type> parts;
    collect_type_subterms(f.arg_types[i], parts);
    bool ok = true;
    for (const auto& d : parts) {
      if (!d.is_data()) continue;
      const TypeCompare c = order.compare(d, f.out_type);
      if (c == TypeCompare::LT) continue;
      if (c == TypeCompare::EQ && occurs_positively(f.out_type, f.arg_types[i], order))
        continue;
      ok = false;
      break;
    }
    if (ok) out.insert(i);
  }
  return out;
}

/// Accessible positions of every declared symbol. The application operator
/// has none, so it never appears here.
using AccTable = std::map<std::string, std::set<std::size_t>>;

inline AccTable build_acc_table(const Signature& sig, const TypeOrder& order) {
  AccTable table;
  for (const auto& f : sig.funs()) table.emplace(f.name, acc_indices(f, order));
  return table;
}

/// Accessible and minimal-type subterm relations for one problem.
class Accessibility {
 public:
  Accessibility() = default;
  Accessibility(const Signature& sig, const TypeOrder& order, std::set<Type> min_types)
      : order_(order), table_(build_acc_table(sig, order)), min_types_(std::move(min_types)) {}

  const AccTable& table() const { return table_; }
  const std::set<Type>& min_types() const { return min_types_; }

  const std::set<std::size_t>& positions(const std::string& f) const {
    static const std::set<std::size_t> none;
    auto it = table_.find(f);
    return it == table_.end() ? none : it->second;
  }

  bool is_min_type(const Type& t) const {
    if (min_types_.count(t)) return true;
    for (const auto& m : min_types_)
      if (order_.eq(m, t)) return true;
    return false;
  }

  /// `u` is an accessible argument of `s`, directly or through accessible
  /// arguments of function-symbol subterms.
  bool accessible(const Term& u, const Term& s) const {
    if (!s.is_fun()) return false;
    for (std::size_t i : positions(s.name())) {
      const Term& si = s.args()[i];
      if (alpha_eq(u, si) || accessible(u, si)) return true;
    }
    return false;
  }

  /// Strict accessibility: `v` accessible in `s`, or a strict subterm of `s`
  /// of minimal type whose free variables are free in `s`. `s` must be
  /// headed by a function symbol or an application.
  bool acc_gt(const Term& s, const Term& v) const {
    if (!s.is_fun() && !s.is_app()) return false;
    if (accessible(v, s)) return true;
    if (!v.typed() || !is_min_type(v.type()) || !free_vars_subset(v, s)) return false;
    bool found = false;
    for (const auto& c : s.children())
      for_each_subterm(c, [&](const Term& sub, const Position&) {
        if (!found && alpha_eq(sub, v)) found = true;
      });
    return found;
  }

  bool acc_ge(const Term& s, const Term& v) const { return alpha_eq(s, v) || acc_gt(s, v); }

  /// Every `v` with `s ▹acc v`, without duplicates: accessible subterms
  /// first (argument order, depth first), then minimal-type subterms in
  /// preorder.
  std::vector<Term> strict_candidates(const Term& s) const {
    std::vector<Term> out;
    if (!s.is_fun() && !s.is_app()) return out;
    std::unordered_set<std::string> seen;
    auto push = [&](const Term& v) {
      if (seen.insert(canonical_key(v)).second) out.push_back(v);
    };
    std::function<void(const Term&)> walk_acc = [&](const Term& t) {
      if (!t.is_fun()) return;
      for (std::size_t i : positions(t.name())) {
        push(t.args()[i]);
        walk_acc(t.args()[i]);
      }
    };
    walk_acc(s);
    for (const auto& c : s.children())
      for_each_subterm(c, [&](const Term& sub, const Position&) {
        if (sub.typed() && is_min_type(sub.type()) && free_vars_subset(sub, s)) push(sub);
      });
    return out;
  }

 private:
  TypeOrder order_;
  AccTable table_;
  std::set<Type> min_types_;
};

}  // namespace horpo
