// Orients the Brouwer-ordinal recursor and prints the proof of each rule.
#include <iostream>

#include "horpo/problem.hpp"
#include "horpo/report.hpp"
#include "horpo/trace_check.hpp"
#include "../tests/support.hpp"

int main() {
  using namespace horpo;
  const Problem p = testing::load("brouwer.horpo");
  const Ordering ord = p.ordering();
  if (!validate_axioms(ord.types, ord.universe).empty()) {
    std::cerr << "type ordering does not validate\n";
    return 2;
  }
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    const RuleResult r = check_rule(ord, p.rules[i], i + 1);
    std::cout << "rule " << r.index << ": " << rule_str(r.rule) << " : " << to_string(r.verdict) << '\n';
    if (!r.trace) continue;
    std::cout << trace_text(*r.trace);
    const auto errors = TraceChecker(ord).check_orientation(*r.trace, r.rule.lhs, r.rule.rhs);
    std::cout << "replay: " << (errors.empty() ? "accepted" : errors.front()) << "\n\n";
  }
}
