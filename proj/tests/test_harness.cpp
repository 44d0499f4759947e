#include <gtest/gtest.h>

#include <algorithm>

#include "horpo/engine.hpp"
#include "horpo/harness/complexity.hpp"
#include "horpo/harness/generator.hpp"
#include "horpo/harness/properties.hpp"
#include "horpo/harness/reduce.hpp"
#include "horpo/harness/search.hpp"
#include "horpo/problem.hpp"
#include "support.hpp"

using namespace horpo;
using namespace horpo::harness;
using namespace horpo::testing;

namespace {

std::vector<std::string> strs(const std::vector<Term>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(t.str());
  std::sort(out.begin(), out.end());
  return out;
}

PropertyConfig small_config(std::size_t n) {
  PropertyConfig cfg;
  cfg.beta_samples = cfg.eta_samples = cfg.irreflexivity_samples = n;
  cfg.stability_samples = cfg.monotonicity_samples = n;
  cfg.chain_samples = 10;
  cfg.exhaustive_size = 3;
  return cfg;
}

}  // namespace

TEST(Generator, DeterministicForASeed) {
  const Problem p = load("brouwer.horpo");
  Environment env = p.env();
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    Generator a(p.sig, {seed}), b(p.sig, {seed});
    for (int i = 0; i < 20; ++i) {
      const Term s = a.gen_term(env, ty("Ord")), t = b.gen_term(env, ty("Ord"));
      EXPECT_EQ(s.str(), t.str());
    }
  }
}

TEST(Generator, TermsAreWellTypedAndBounded) {
  const Problem p = load("brouwer.horpo");
  const Environment env = p.env();
  Generator g(p.sig, {5, 10});
  for (const auto& tau : {ty("Nat"), ty("Ord"), ty("A"), arr(ty("Nat"), ty("A"))})
    for (int i = 0; i < 50; ++i) {
      const Term t = g.gen_term(env, tau);
      EXPECT_LE(t.size(), 10u);
      EXPECT_EQ(infer_type(p.sig, env, t).type(), tau) << t.str();
    }
}

TEST(Generator, UninhabitedType) {
  const Problem p = parse_problem("sort E ;\nsort N ;\nfun z : [] -> N ;\nfun f : [E] -> E ;\n");
  Generator g(p.sig, {});
  EXPECT_THROW(g.gen_term({}, ty("E")), GenError);
  EXPECT_NO_THROW(g.gen_term({}, ty("N")));
}

TEST(Generator, SizeOneIsTheConstant) {
  const Problem p = load("brouwer.horpo");
  Generator g(p.sig, {3});
  for (int i = 0; i < 5; ++i) EXPECT_EQ(g.gen_term({}, ty("Ord"), 1).str(), "0");
  EXPECT_THROW(g.gen_term({}, ty("A"), 1), GenError);
}

TEST(Reduce, BetaAndEtaSteps) {
  const Problem p = load("brouwer.horpo");
  EXPECT_EQ(strs(beta_step(parse_term(p, "@(\\x:Nat. x, n)"))), (std::vector<std::string>{"n"}));
  EXPECT_EQ(strs(eta_step(parse_term(p, "\\x:Nat. @(F, x)"))), (std::vector<std::string>{"F"}));
  EXPECT_TRUE(beta_step(parse_term(p, "0")).empty());
  EXPECT_TRUE(eta_step(parse_term(p, "0")).empty());
  EXPECT_TRUE(eta_step(parse_term(p, "\\x:Nat. @(\\y:Nat. @(F, x), x)")).size() == 0u);
  // Redexes at two positions give two reducts.
  const Term two = parse_term(p, "s(@(\\m:Ord. s(m), @(\\k:Ord. k, N)))");
  EXPECT_EQ(beta_step(two).size(), 2u);
  for (const auto& r : beta_step(two)) EXPECT_EQ(r.type(), two.type());
  // Capture is avoided.
  const Term cap = parse_term(p, "@(\\k:Nat. \\n:Nat. @(F, k), n)");
  const auto reducts = beta_step(cap);
  ASSERT_EQ(reducts.size(), 1u);
  EXPECT_TRUE(reducts[0].has_free("n"));
}

TEST(Properties, CleanOnBrouwerAndNatRec) {
  for (const char* f : {"brouwer.horpo", "nat_rec.horpo"}) {
    const auto rep = run_properties(load(f), small_config(60));
    for (const auto& s : rep.suites) EXPECT_TRUE(s.ok()) << f << " " << s.name;
    ASSERT_TRUE(rep.find("beta-functionality"));
    EXPECT_GT(rep.find("beta-functionality")->samples, 0u);
  }
}

TEST(Properties, RemovingCase2cIsDetected) {
  PropertyConfig cfg = small_config(60);
  cfg.engine.disabled = {CaseLabel::C2c};
  const SuiteResult beta = PropertyRunner(load("brouwer.horpo"), cfg).beta();
  EXPECT_GT(beta.failures, 0u);
  ASSERT_FALSE(beta.examples.empty());
  const auto& ex = beta.examples.front();
  ASSERT_FALSE(ex.shrunk.empty());
  EXPECT_LE(ex.shrunk.front().size(), ex.original.front().size());
}

TEST(Properties, ResultsDoNotDependOnThreads) {
  PropertyConfig one = small_config(40), many = small_config(40);
  one.threads = 1;
  many.threads = 4;
  const Problem p = load("brouwer.horpo");
  const auto a = run_properties(p, one), b = run_properties(p, many);
  ASSERT_EQ(a.suites.size(), b.suites.size());
  for (std::size_t i = 0; i < a.suites.size(); ++i) {
    EXPECT_EQ(a.suites[i].samples, b.suites[i].samples) << a.suites[i].name;
    EXPECT_EQ(a.suites[i].checks, b.suites[i].checks) << a.suites[i].name;
  }
}

TEST(Properties, ExhaustiveEnumerationCounts) {
  const Problem toy = toy_problem();
  const Type t = ty("T");
  // Size 1 of type T: a and x.
  EXPECT_EQ(enumerate_terms(toy, toy.env(), t, 1).size(), 2u);
  // Size 1 of type T -> T: F.
  EXPECT_EQ(enumerate_terms(toy, toy.env(), arr(t, t), 1).size(), 1u);
  // Size 2 of type T: f(a), f(x), and h needs an argument of size 1 (F).
  EXPECT_EQ(enumerate_terms(toy, toy.env(), t, 2).size(), 3u);
  const auto r = PropertyRunner::exhaustive(3, {});
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.checks, 0u);
}

TEST(Search, Examples) {
  const auto found = search_params(load("brouwer_stripped.horpo"));
  ASSERT_TRUE(found.found);
  EXPECT_TRUE(orients_all(*found.found));
  const auto& so = found.found->sort_order;
  const bool nat_below_ord = std::count(so.less.begin(), so.less.end(), std::pair<std::string, std::string>{"Nat", "Ord"}) > 0;
  const bool nat_eq_ord = !so.equiv.empty();
  EXPECT_TRUE(nat_below_ord || nat_eq_ord);

  const Problem fg = parse_problem("sort T ;\nfun f : [T] -> T ;\nfun g : [T] -> T ;\nvar x : T ;\nrule f(x) -> g(x) ;\n");
  const auto prec = search_params(fg);
  ASSERT_TRUE(prec.found);
  EXPECT_EQ(prec.found->prec_greater, (std::vector<std::pair<std::string, std::string>>{{"f", "g"}}));
  EXPECT_EQ(prec.weight, 1u);

  const auto none = search_params(load("not_oriented.horpo"));
  EXPECT_FALSE(none.found);
  EXPECT_GT(none.candidates, 0u);
}

TEST(Search, BoundExceeded) {
  SearchBounds b;
  b.max_symbols = 2;
  EXPECT_THROW(search_params(load("brouwer.horpo"), b), SearchError);
}

TEST(Complexity, DoublingFamily) {
  const auto counts = doubling_counts(4, 4);
  ASSERT_EQ(counts.size(), 4u);
  for (const auto& c : counts) EXPECT_TRUE(c.oriented);
  for (std::size_t i = 1; i < counts.size(); ++i) {
    const double ratio = double(counts[i].memo_entries) / double(counts[i - 1].memo_entries);
    EXPECT_LE(ratio, 4.5);
    EXPECT_GE(ratio, 1.5);
  }
}
