#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "horpo/term.hpp"
#include "support.hpp"

using namespace horpo;
using namespace horpo::testing;

namespace {

// Locally-nameless rendering written independently of the library: bound
// variables become their binder distance, free ones keep their name.
std::string nameless(const Term& t, std::vector<std::string>& binders) {
  switch (t.kind()) {
    case Term::Kind::Var:
      for (std::size_t i = binders.size(); i-- > 0;)
        if (binders[i] == t.name()) return "#" + std::to_string(binders.size() - 1 - i);
      return t.name();
    case Term::Kind::Abs: {
      binders.push_back(t.name());
      std::string body = nameless(t.body(), binders);
      binders.pop_back();
      return "(lam " + t.binder_type().str() + " " + body + ")";
    }
    case Term::Kind::App: {
      std::string f = nameless(t.fun_part(), binders);
      return "(app " + f + " " + nameless(t.arg_part(), binders) + ")";
    }
    case Term::Kind::Fun: {
      std::string out = "(" + t.name();
      for (const auto& a : t.args()) out += " " + nameless(a, binders);
      return out + ")";
    }
  }
  return "?";
}

std::string nameless(const Term& t) {
  std::vector<std::string> b;
  return nameless(t, b);
}

class TermTest : public ::testing::Test {
 protected:
  Problem p = load("brouwer.horpo");
  Term parse(const char* s) const { return parse_term(p, s); }
};

}  // namespace

TEST_F(TermTest, InferTypeOnBrouwerTerms) {
  EXPECT_EQ(parse("rec(lim(F), U, V, W)").type(), ty("A"));
  EXPECT_EQ(parse("@(F, n)").type(), ty("Ord"));
  EXPECT_EQ(parse("\\n:Nat. rec(@(F, n), U, V, W)").type(), arr(ty("Nat"), ty("A")));
  EXPECT_EQ(parse("@(V, N)").type(), arr(ty("A"), ty("A")));
}

TEST_F(TermTest, InferTypeRejectsIllTypedTerms) {
  EXPECT_THROW(parse("s(n)"), ParseError);
  EXPECT_THROW(parse("@(U, n)"), ParseError);
  EXPECT_THROW(parse("lim(N)"), ParseError);
}

TEST_F(TermTest, EveryNodeIsAnnotated) {
  const Term t = parse("@(W, F, \\n:Nat. rec(@(F, n), U, V, W))");
  std::size_t untyped = 0;
  for_each_subterm(t, [&](const Term& u, const Position&) { untyped += !u.typed(); });
  EXPECT_EQ(untyped, 0u);
}

TEST_F(TermTest, SubstituteFreeVariable) {
  const Term n = parse("n");
  const Term x = Term::var("x", ty("Nat"));
  EXPECT_TRUE(alpha_eq(substitute(x, "x", n), n));
}

TEST_F(TermTest, SubstituteLeavesBoundOccurrence) {
  const Term id = Term::abs("x", ty("Nat"), Term::var("x", ty("Nat")));
  const Term out = substitute(id, "x", parse("n"));
  EXPECT_EQ(out.str(), id.str());
  EXPECT_EQ(out.id(), id.id());
}

TEST_F(TermTest, SubstituteAvoidsCapture) {
  const Type nat = ty("Nat");
  const Term F = Term::var("F", arr(nat, ty("Ord")));
  const Term t = Term::abs("y", nat, Term::app(F, Term::var("x", nat)));
  const Term out = substitute(t, "x", Term::var("y", nat));
  // Expected: lambda z. F y with y free.
  const Term expected = Term::abs("z", nat, Term::app(F, Term::var("y", nat)));
  EXPECT_EQ(nameless(out), nameless(expected));
  EXPECT_EQ(nameless(out), "(lam Nat (app F y))");
  EXPECT_EQ(out.name(), "y#0");
  EXPECT_TRUE(out.has_free("y"));
}

TEST_F(TermTest, SubstitutionComposition) {
  const Type nat = ty("Nat");
  const Term F = Term::var("F", arr(nat, ty("Ord")));
  const Term t = Term::abs("y", nat, Term::app(F, Term::var("x", nat)));
  const Term m = Term::var("m", nat);
  // x := y, then y := m, equals x := m on the body once y is renamed away.
  const Term two = substitute(substitute(t, "x", Term::var("y", nat)), "y", m);
  const Term one = substitute(t, "x", m);
  EXPECT_EQ(nameless(two), nameless(one));
}

TEST_F(TermTest, AlphaEquivalence) {
  const Type nat = ty("Nat"), a = ty("A");
  EXPECT_TRUE(alpha_eq(Term::abs("x", nat, Term::var("x", nat)), Term::abs("y", nat, Term::var("y", nat))));
  EXPECT_FALSE(alpha_eq(Term::abs("x", nat, Term::var("x", nat)), Term::abs("x", nat, Term::var("n", nat))));
  const Term u = parse("U");
  EXPECT_TRUE(alpha_eq(Term::app(Term::abs("x", a, Term::var("x", a)), u),
                       Term::app(Term::abs("y", a, Term::var("y", a)), u)));
  EXPECT_FALSE(alpha_eq(Term::abs("x", nat, Term::var("x", nat)), Term::abs("x", a, Term::var("x", a))));
}

TEST_F(TermTest, AlphaEqualityAgreesWithNamelessOracle) {
  const char* terms[] = {"\\m:Nat. @(F, m)", "\\k:Nat. @(F, k)", "\\m:Nat. @(F, n)",
                         "\\m:Nat. \\k:Nat. @(F, m)", "\\m:Nat. \\k:Nat. @(F, k)", "lim(F)", "F"};
  for (const char* a : terms)
    for (const char* b : terms) {
      const Term s = parse(a), t = parse(b);
      EXPECT_EQ(alpha_eq(s, t), nameless(s) == nameless(t)) << a << " vs " << b;
      EXPECT_EQ(canonical_key(s) == canonical_key(t), nameless(s) == nameless(t)) << a << " vs " << b;
    }
}

TEST_F(TermTest, CountAbstractions) {
  EXPECT_EQ(count_abstractions(Term::var("x", ty("Nat"))), 0u);
  EXPECT_EQ(count_abstractions(parse("\\n:Nat. rec(@(F, n), U, V, W)")), 1u);
  const Type a = ty("A");
  EXPECT_EQ(count_abstractions(Term::abs("x", a, Term::abs("y", a, Term::var("x", a)))), 2u);
}

TEST_F(TermTest, Categorize) {
  EXPECT_EQ(categorize(parse("\\x:Nat. x")), Category::Abstraction);
  EXPECT_EQ(categorize(parse("lim(F)")), Category::Prealgebraic);
  EXPECT_EQ(categorize(parse("@(F, n)")), Category::Neutral);
  EXPECT_EQ(categorize(parse("n")), Category::Neutral);
}

TEST(FreshVar, Examples) {
  EXPECT_EQ(fresh_var("z", {}), "z#0");
  EXPECT_EQ(fresh_var("z", {"z#0"}), "z#1");
  EXPECT_EQ(fresh_var("n", {"n#0", "n#1"}), "n#2");
  EXPECT_EQ(fresh_var("n#4", {}), "n#0");
}

TEST_F(TermTest, PrintedForms) {
  EXPECT_EQ(parse("@(W, F, \\n:Nat. rec(@(F, n), U, V, W))").str(),
            "@(@(W,F),λn:Nat.rec(@(F,n),U,V,W))");
}
