// Recovers a sort order and precedence for a problem given without them.
#include <iostream>

#include "horpo/harness/search.hpp"
#include "../tests/support.hpp"

int main(int argc, char** argv) {
  using namespace horpo;
  const Problem p = argc > 1 ? parse_problem(testing::read_file(argv[1])) : testing::load("brouwer_stripped.horpo");
  const auto res = harness::search_params(p);
  if (!res.found) {
    std::cout << "no assignment after " << res.candidates << " candidates\n";
    return 1;
  }
  std::cout << "found after " << res.candidates << " candidates\n";
  for (const auto& [lo, hi] : res.found->sort_order.less) std::cout << "order " << lo << " < " << hi << '\n';
  for (const auto& [a, b] : res.found->sort_order.equiv) std::cout << "order " << a << " = " << b << '\n';
  for (const auto& [f, g] : res.found->prec_greater) std::cout << "prec " << f << " > " << g << '\n';
  for (const auto& [f, g] : res.found->prec_equal) std::cout << "prec " << f << " = " << g << '\n';
  for (const auto& [f, s] : res.found->statuses) std::cout << "status " << f << ' ' << to_string(s) << '\n';
}
