#pragma once

#include <cstddef>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "horpo/type.hpp"

namespace horpo {

/// One domination step of an extension witness: `lhs[from] R rhs[to]`.
template <class Proof>
struct ExtStep {
  std::size_t from;
  std::size_t to;
  Proof proof;
};

/// Witness of a successful multiset comparison: the pairs removed as equal
/// and one domination step per remaining right-hand element.
template <class Proof>
struct MulWitness {
  std::vector<std::pair<std::size_t, std::size_t>> common;  // (lhs index, rhs index)
  std::vector<ExtStep<Proof>> steps;
};

/// Strict multiset extension of `rel` modulo the equivalence `eq`: after
/// removing common elements the left remainder is non-empty and dominates
/// every element of the right remainder. `rel(a, b)` returns anything
/// testable as a boolean (a proof pointer, an optional, a bool).
template <class T, class Eq, class Rel>
auto mul_ext(const std::vector<T>& lhs, const std::vector<T>& rhs, Eq&& eq, Rel&& rel)
    -> std::optional<MulWitness<std::decay_t<decltype(rel(lhs[0], rhs[0]))>>> {
  using Proof = std::decay_t<decltype(rel(lhs[0], rhs[0]))>;
  MulWitness<Proof> w;
  std::vector<bool> lhs_used(lhs.size(), false), rhs_used(rhs.size(), false);
  for (std::size_t j = 0; j < rhs.size(); ++j)
    for (std::size_t i = 0; i < lhs.size(); ++i)
      if (!lhs_used[i] && eq(lhs[i], rhs[j])) {
        lhs_used[i] = rhs_used[j] = true;
        w.common.emplace_back(i, j);
        break;
      }
  bool lhs_left = false;
  for (bool u : lhs_used) lhs_left |= !u;
  if (!lhs_left) return std::nullopt;
  for (std::size_t j = 0; j < rhs.size(); ++j) {
    if (rhs_used[j]) continue;
    bool dominated = false;
    for (std::size_t i = 0; i < lhs.size() && !dominated; ++i) {
      if (lhs_used[i]) continue;
      if (auto p = rel(lhs[i], rhs[j])) {
        w.steps.push_back({i, j, std::move(p)});
        dominated = true;
      }
    }
    if (!dominated) return std::nullopt;
  }
  return w;
}

/// Witness of a lexicographic comparison: the first index where the tuples
/// differ and the proof that the left element dominates there.
template <class Proof>
struct LexWitness {
  std::size_t index;
  Proof proof;
};

/// Strict lexicographic extension of `rel` modulo `eq`; tuples must have
/// equal length.
template <class T, class Eq, class Rel>
auto lex_ext(const std::vector<T>& lhs, const std::vector<T>& rhs, Eq&& eq, Rel&& rel)
    -> std::optional<LexWitness<std::decay_t<decltype(rel(lhs[0], rhs[0]))>>> {
  if (lhs.size() != rhs.size()) throw Error("lexicographic comparison of tuples of different length");
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (eq(lhs[i], rhs[i])) continue;
    if (auto p = rel(lhs[i], rhs[i])) return LexWitness<decltype(p)>{i, std::move(p)};
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace horpo
