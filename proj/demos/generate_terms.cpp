// Draws a few random terms over the Brouwer signature and shows their beta
// reducts, each checked to be smaller in the ordering.
#include <iostream>

#include "horpo/engine.hpp"
#include "horpo/harness/generator.hpp"
#include "horpo/harness/reduce.hpp"
#include "../tests/support.hpp"

int main(int argc, char** argv) {
  using namespace horpo;
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 1;
  const Problem p = testing::load("brouwer.horpo");
  const Ordering ord = p.ordering();
  harness::GenConfig cfg;
  cfg.seed = seed;
  cfg.redex_weight = 3.0;
  harness::Generator gen(p.sig, cfg);
  const Environment env = p.env();
  for (int i = 0; i < 8; ++i) {
    const Term s = gen.gen_term(env, Type::data(i % 2 ? "Ord" : "A"));
    std::cout << s.str() << " : " << s.type().str() << '\n';
    for (const auto& t : harness::beta_step(s)) {
      Engine e(ord);
      std::cout << "  ->beta " << t.str() << (e.gt_type({}, s, t) ? "  (smaller)" : "  (NOT smaller)") << '\n';
    }
  }
}
