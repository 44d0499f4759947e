#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "horpo/term.hpp"

namespace horpo::harness {

namespace detail {

template <class Step>
std::vector<Term> one_step(const Term& t, Step&& contract) {
  std::vector<Term> out;
  std::unordered_set<std::string> seen;
  for_each_subterm(t, [&](const Term& sub, const Position& p) {
    Term r;
    if (!contract(sub, r)) return;
    Term whole = replace_at(t, p, r);
    if (seen.insert(canonical_key(whole)).second) out.push_back(std::move(whole));
  });
  return out;
}

}  // namespace detail

/// All one-step beta reducts of `t`, one per redex position, without
/// alpha-equivalent duplicates.
inline std::vector<Term> beta_step(const Term& t) {
  return detail::one_step(t, [](const Term& s, Term& out) {
    if (!s.is_app() || !s.fun_part().is_abs()) return false;
    const Term& lam = s.fun_part();
    out = substitute(lam.body(), lam.name(), s.arg_part());
    return true;
  });
}

/// All one-step eta reducts: `λx.@(v,x)` with `x` not free in `v` becomes `v`.
inline std::vector<Term> eta_step(const Term& t) {
  return detail::one_step(t, [](const Term& s, Term& out) {
    if (!s.is_abs() || !s.body().is_app()) return false;
    const Term& v = s.body().fun_part();
    const Term& x = s.body().arg_part();
    if (!x.is_var() || x.name() != s.name() || v.has_free(s.name())) return false;
    out = v;
    return true;
  });
}

inline bool has_beta_redex(const Term& t) {
  bool found = false;
  for_each_subterm(t, [&](const Term& s, const Position&) {
    found = found || (s.is_app() && s.fun_part().is_abs());
  });
  return found;
}

}  // namespace horpo::harness
