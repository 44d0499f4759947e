#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "horpo/engine.hpp"
#include "horpo/problem.hpp"

namespace horpo::harness {

struct CallStats {
  bool oriented = false;
  std::size_t memo_entries = 0;
  std::size_t lhs_size = 0;
  std::size_t rhs_size = 0;
  std::size_t max_depth = 0;
};

/// Orients rule `index` (0-based) of `p` with a fresh engine and reports
/// how many distinct goals were memoized.
inline CallStats count_calls(const Problem& p, std::size_t index, const EngineOptions& opts = {}) {
  const Ordering ord = p.ordering();
  const Rule& r = p.rules.at(index);
  Engine e(ord, opts);
  CallStats s;
  s.oriented = e.orient(r.lhs, r.rhs) != nullptr;
  s.memo_entries = e.memo_entries();
  s.lhs_size = r.lhs.size();
  s.rhs_size = r.rhs.size();
  s.max_depth = e.max_depth_reached();
  return s;
}

/// Number of goals for a single comparison, without type check.
inline std::size_t count_calls(const Ordering& ord, const Term& s, const Term& t, bool reflexive = false) {
  Engine e(ord);
  if (reflexive) e.ge({}, s, t);
  else e.gt({}, s, t);
  return e.memo_entries();
}

/// Member `n` of a family whose rule size grows linearly in `n`: an
/// `n`-ary symbol above another, with arguments reversed on the right and
/// each wrapped in a unary symbol on the left.
inline Problem doubling_family(std::size_t n) {
  std::string src = "sort T ;\nfun c : [T] -> T ;\nfun f : [";
  for (std::size_t i = 0; i < n; ++i) src += i ? ", T" : "T";
  src += "] -> T ;\nfun g : [";
  for (std::size_t i = 0; i < n; ++i) src += i ? ", T" : "T";
  src += "] -> T ;\nprec f > g ;\n";
  for (std::size_t i = 1; i <= n; ++i) src += "var x" + std::to_string(i) + " : T ;\n";
  src += "rule f(";
  for (std::size_t i = 1; i <= n; ++i) src += (i > 1 ? ", c(x" : "c(x") + std::to_string(i) + ")";
  src += ") -> g(";
  for (std::size_t i = n; i >= 1; --i) src += "x" + std::to_string(i) + (i > 1 ? ", " : "");
  src += ") ;\n";
  return parse_problem(src);
}

/// Memo-entry counts for the family at `start`, `2*start`, ... (`steps`
/// members).
inline std::vector<CallStats> doubling_counts(std::size_t start, std::size_t steps) {
  std::vector<CallStats> out;
  for (std::size_t k = 0, n = start; k < steps; ++k, n *= 2) out.push_back(count_calls(doubling_family(n), 0));
  return out;
}

}  // namespace horpo::harness
