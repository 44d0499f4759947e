#include <gtest/gtest.h>

#include <sstream>

#include "horpo/cli.hpp"
#include "horpo/engine.hpp"
#include "horpo/problem.hpp"
#include "horpo/report.hpp"
#include "support.hpp"

using namespace horpo;
using namespace horpo::testing;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kHeader = "sort Nat ;\nfun 0 : [] -> Nat ;\nfun s : [Nat] -> Nat ;\nvar x : Nat ;\nvar y : Nat ;\n";

std::string parse_error(const std::string& body) {
  try {
    parse_problem(std::string(kHeader) + body);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Parse, BrouwerFile) {
  const Problem p = load("brouwer.horpo");
  EXPECT_EQ(p.rules.size(), 3u);
  EXPECT_EQ(p.sig.funs().size(), 4u);
  EXPECT_EQ(p.sig.fun("lim").arg_types.at(0), arr(ty("Nat"), ty("Ord")));
  EXPECT_EQ(p.rules[2].lhs.type(), ty("A"));
}

TEST(Parse, EmptyFile) {
  EXPECT_TRUE(parse_problem("").rules.empty());
  EXPECT_TRUE(parse_problem("# only a comment\n").rules.empty());
}

TEST(Parse, CurriedApplicationIsLeftNested) {
  const Problem p = load("brouwer.horpo");
  const Term t = parse_term(p, "@(V, N, U)");
  ASSERT_TRUE(t.is_app());
  EXPECT_TRUE(alpha_eq(t, parse_term(p, "@(@(V, N), U)")));
}

TEST(Parse, Errors) {
  EXPECT_NE(parse_error("rule s(x) -> y ;").find("Var(r) ⊆ Var(l)"), std::string::npos);
  EXPECT_NE(parse_error("rule s(x) -> t(x) ;").find("unknown symbol 't'"), std::string::npos);
  EXPECT_NE(parse_error("rule s(x, x) -> x ;").find("ill-typed"), std::string::npos);
  EXPECT_NE(parse_error("fun f : [Nat] -> Nat -> Nat ;\nrule f(x) -> x ;").find("different types"), std::string::npos);
  EXPECT_NE(parse_error("sort Nat ;").find("already declared"), std::string::npos);
  EXPECT_NE(parse_error("order Nat < Bool ;").find("Bool"), std::string::npos);
  const std::string missing = parse_error("rule s(x) -> x");
  EXPECT_NE(missing.find("line 6"), std::string::npos) << missing;
  EXPECT_NE(missing.find("expected ';'"), std::string::npos) << missing;
  EXPECT_NE(parse_error("\nrule s(x) => x ;").find("line 7, column 11"), std::string::npos)
      << parse_error("\nrule s(x) => x ;");
}

TEST(Parse, RoundTripOnEveryCorpusFile) {
  for (const char* f : kCorpusFiles) {
    const Problem p = load(f);
    const std::string printed = print_problem(p);
    const Problem q = parse_problem(printed);
    EXPECT_TRUE(p == q) << f;
    EXPECT_EQ(print_problem(q), printed) << f;
  }
}

TEST(Serialize, RootLineOfRuleThree) {
  const Problem p = load("brouwer.horpo");
  const Ordering ord = p.ordering();
  Engine e(ord);
  const TracePtr t = e.orient(p.rules[2].lhs, p.rules[2].rhs);
  ASSERT_TRUE(t);
  const std::string text = serialize_trace(*t, TraceFormat::Text);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "case 1c: rec(lim(F),U,V,W) > @(@(W,F),λn:Nat.rec(@(F,n),U,V,W))");
  EXPECT_NE(text.find("accApply: lim(F) >acc @(F,n#0) with X={n#0:Nat}"), std::string::npos) << text;
}

TEST(Serialize, ReflexivityNode) {
  const Problem p = load("brouwer.horpo");
  const Ordering ord = p.ordering();
  Engine e(ord);
  const Term n = parse_term(p, "n");
  const TracePtr t = e.ge({}, n, n);
  ASSERT_TRUE(t);
  EXPECT_EQ(serialize_trace(*t, TraceFormat::Text), "refl: n ≥ n\n");
  const Json j = trace_json(*t);
  EXPECT_EQ(j["caseLabel"], "refl");
  EXPECT_EQ(j["lhs"], "n");
  EXPECT_EQ(j["rhs"], "n");
  EXPECT_TRUE(j["children"].is_array());
  EXPECT_TRUE(j["children"].empty());
}

TEST(Serialize, GoldenTraceOfRuleThree) {
  const auto text = cli({"trace", corpus("brouwer.horpo"), "--rule", "3"});
  ASSERT_EQ(text.code, 0);
  EXPECT_EQ(text.out, read_file(corpus("golden/brouwer_rule3.txt")));
  const auto json = cli({"--format", "json", "trace", corpus("brouwer.horpo"), "--rule", "3"});
  ASSERT_EQ(json.code, 0);
  EXPECT_EQ(Json::parse(json.out), Json::parse(read_file(corpus("golden/brouwer_rule3.json"))));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"check", corpus("brouwer.horpo")}).code, 0);
  EXPECT_EQ(cli({"check", corpus("empty.horpo")}).code, 0);
  EXPECT_EQ(cli({"check", corpus("not_oriented.horpo")}).code, 1);
  const auto cyclic = cli({"check", corpus("cyclic_sorts.horpo")});
  EXPECT_EQ(cyclic.code, 2);
  EXPECT_NE(cyclic.out.find("well-foundedness"), std::string::npos);
  EXPECT_EQ(cli({"check", corpus("missing.horpo")}).code, 2);
  EXPECT_EQ(cli({"validate", corpus("brouwer.horpo")}).code, 0);
  EXPECT_EQ(cli({"trace", corpus("brouwer.horpo"), "--rule", "0"}).code, 2);
  EXPECT_EQ(cli({"trace", corpus("not_oriented.horpo"), "--rule", "1"}).code, 1);
  EXPECT_EQ(cli({"bogus"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, CheckReportShape) {
  const auto r = cli({"--format", "json", "check", corpus("brouwer.horpo")});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "ok");
  ASSERT_EQ(j["rules"].size(), 3u);
  EXPECT_EQ(j["rules"][2]["verdict"], "oriented");
  EXPECT_FALSE(j["rules"][2].contains("millis"));
  const auto timed = cli({"--format", "json", "check", corpus("brouwer.horpo"), "--timing"});
  EXPECT_TRUE(Json::parse(timed.out)["rules"][0].contains("millis"));
}

TEST(Cli, ByteIdenticalRuns) {
  const std::vector<std::vector<std::string>> commands = {
      {"check", corpus("brouwer.horpo"), "--traces"},
      {"--format", "json", "check", corpus("nat_rec.horpo"), "--traces"},
      {"validate", corpus("brouwer.horpo")},
      {"search", corpus("brouwer_stripped.horpo")},
      {"--seed", "7", "properties", corpus("nat_rec.horpo"), "--samples", "40", "--exhaustive-size", "0"}};
  for (const auto& c : commands) {
    const auto a = cli(c), b = cli(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << c[0];
    EXPECT_EQ(a.err, b.err);
  }
}
