#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "horpo/engine.hpp"
#include "horpo/problem.hpp"
#include "horpo/type_order.hpp"

namespace horpo::harness {

class SearchError : public Error {
 public:
  using Error::Error;
};

struct SearchBounds {
  std::size_t max_symbols = 8;
  /// Largest number of non-default choices tried; 0 means no limit.
  std::size_t max_weight = 0;
  EngineOptions engine;
};

struct SearchResult {
  std::optional<Problem> found;  // the input with the parameters filled in
  std::size_t candidates = 0;    // parameter assignments examined
  std::size_t weight = 0;        // non-default choices in the answer
};

namespace detail {

// One independent choice of the parameter space. Option 0 is the default
// (no constraint); the others each add one declaration.
struct Slot {
  enum Kind { SortPair, PrecPair, Lex } kind;
  std::string a, b;
  std::size_t options;  // including the default
};

inline void apply_choice(Problem& p, const Slot& s, std::size_t option) {
  switch (s.kind) {
    case Slot::SortPair:
      if (option == 1) p.sort_order.less.emplace_back(s.a, s.b);
      if (option == 2) p.sort_order.less.emplace_back(s.b, s.a);
      if (option == 3) p.sort_order.equiv.emplace_back(s.a, s.b);
      break;
    case Slot::PrecPair:
      if (option == 1) p.prec_greater.emplace_back(s.a, s.b);
      if (option == 2) p.prec_greater.emplace_back(s.b, s.a);
      if (option == 3) p.prec_equal.emplace_back(s.a, s.b);
      break;
    case Slot::Lex:
      if (option == 1) p.statuses.emplace_back(s.a, Status::Lex);
      break;
  }
}

}  // namespace detail

/// Whether every rule of `p` is oriented under its own parameters, which
/// must also pass validation.
inline bool orients_all(const Problem& p, const EngineOptions& opts = {}) {
  const Ordering ord = p.ordering();
  if (!validate_axioms(ord.types, ord.universe).empty() || !ord.parameter_errors().empty()) return false;
  for (const auto& r : p.rules) {
    if (r.lhs.is_var()) return false;
    Engine e(ord, opts);
    try {
      if (!e.orient(r.lhs, r.rhs)) return false;
    } catch (const EngineError&) {
      return false;
    }
  }
  return true;
}

/// Searches sort orders, precedences and statuses for `p` (whose own
/// parameters are discarded). Assignments are enumerated by the number of
/// non-default choices, then in declaration order, so the first answer is
/// the smallest and the search is deterministic.
inline SearchResult search_params(const Problem& p, const SearchBounds& bounds = {}) {
  const Problem base = p.without_parameters();
  const auto& sorts = base.sig.sorts();
  const auto& funs = base.sig.funs();
  if (funs.size() > bounds.max_symbols)
    throw SearchError("search bound exceeded: " + std::to_string(funs.size()) + " symbols, bound " +
                      std::to_string(bounds.max_symbols));

  std::vector<detail::Slot> slots;
  for (std::size_t i = 0; i < sorts.size(); ++i)
    for (std::size_t j = i + 1; j < sorts.size(); ++j)
      slots.push_back({detail::Slot::SortPair, sorts[i].name, sorts[j].name, 4});
  for (std::size_t i = 0; i < funs.size(); ++i)
    for (std::size_t j = i + 1; j < funs.size(); ++j)
      slots.push_back({detail::Slot::PrecPair, funs[i].name, funs[j].name, 4});
  for (const auto& f : funs)
    if (f.arity() >= 2) slots.push_back({detail::Slot::Lex, f.name, {}, 2});

  SearchResult res;
  const std::size_t top = bounds.max_weight ? std::min(bounds.max_weight, slots.size()) : slots.size();
  std::vector<std::size_t> chosen;   // slot indices, increasing
  std::vector<std::size_t> options;  // option per chosen slot, >= 1

  std::function<bool(std::size_t, std::size_t)> pick_options = [&](std::size_t k, std::size_t w) -> bool {
    if (k == w) {
      ++res.candidates;
      Problem cand = base;
      for (std::size_t i = 0; i < w; ++i) detail::apply_choice(cand, slots[chosen[i]], options[i]);
      if (!orients_all(cand, bounds.engine)) return false;
      res.found = std::move(cand);
      res.weight = w;
      return true;
    }
    for (std::size_t o = 1; o < slots[chosen[k]].options; ++o) {
      options[k] = o;
      if (pick_options(k + 1, w)) return true;
    }
    return false;
  };
  std::function<bool(std::size_t, std::size_t)> pick_slots = [&](std::size_t from, std::size_t w) -> bool {
    if (chosen.size() == w) {
      options.assign(w, 1);
      return pick_options(0, w);
    }
    for (std::size_t s = from; s + (w - chosen.size()) <= slots.size(); ++s) {
      chosen.push_back(s);
      const bool ok = pick_slots(s + 1, w);
      chosen.pop_back();
      if (ok) return true;
    }
    return false;
  };
  for (std::size_t w = 0; w <= top; ++w)
    if (pick_slots(0, w)) return res;
  return res;
}

}  // namespace horpo::harness
