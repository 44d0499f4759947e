// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "horpo/cli.hpp"
#include "horpo/engine.hpp"
#include "horpo/harness/complexity.hpp"
#include "horpo/harness/properties.hpp"
#include "horpo/harness/search.hpp"
#include "horpo/report.hpp"
#include "horpo/trace_check.hpp"
#include "support.hpp"

using namespace horpo;
using namespace horpo::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

int run(const std::vector<std::string>& args, std::string* out = nullptr, std::string* err = nullptr) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

bool has_node(const ProofTrace& t, const std::function<bool(const ProofTrace&)>& pred) {
  if (pred(t)) return true;
  for (const auto& c : t.children)
    if (has_node(*c, pred)) return true;
  return false;
}

Outcome brouwer_recursor() {
  Outcome o;
  const auto start = Clock::now();
  std::string out;
  const int code = run({"check", corpus("brouwer.horpo")}, &out);
  const double secs = seconds_since(start);
  o.require(code == 0, "check exit " + std::to_string(code));
  o.require(secs < 1.0, "check took " + std::to_string(secs) + " s");

  const Problem p = load("brouwer.horpo");
  const Ordering ord = p.ordering();
  Engine e(ord);
  const TracePtr t = e.orient(p.rules.at(2).lhs, p.rules.at(2).rhs);
  if (!t) {
    o.require(false, "rule 3 not oriented");
    return o;
  }
  o.require(TraceChecker(ord).check_orientation(*t, p.rules[2].lhs, p.rules[2].rhs).empty(), "trace replay failed");
  o.require(t->label == CaseLabel::C1c, "root is not case 1c");
  if (t->children.size() == 3) {
    const auto& w = *t->children[0];
    const auto& f = *t->children[1];
    const auto& lam = *t->children[2];
    o.require(w.label == CaseLabel::C1a && w.rhs.str() == "W", "first subgoal is not 1a on W");
    o.require(f.label == CaseLabel::C1a && f.rhs.str() == "F", "second subgoal is not 1a on F");
    o.require(has_node(f, [](const ProofTrace& n) {
                return n.label == CaseLabel::AccApply && n.lhs.str() == "lim(F)" && n.aux_value("w") == "F";
              }),
              "F is not reached as accessible in lim(F)");
    o.require(lam.label == CaseLabel::C4b && lam.children.size() == 1 &&
                  lam.children[0]->label == CaseLabel::C1b,
              "third subgoal is not 4b then 1b");
    o.require(has_node(lam, [](const ProofTrace& n) {
                return n.label == CaseLabel::MulExt &&
                       has_node(n, [](const ProofTrace& m) {
                         return m.label == CaseLabel::AccApply && m.kind == GoalKind::ACC_GT_TYPE &&
                                m.lhs.str() == "lim(F)" && m.rhs.str() == "@(F,n#0)";
                       });
              }),
              "multiset step is not resolved by the strict composite on lim(F)");
    o.require(has_node(lam, [](const ProofTrace& n) { return n.label == CaseLabel::C4a && n.rhs.str() == "n#0"; }),
              "freed variable not resolved by 4a");
  } else {
    o.require(false, "root has " + std::to_string(t->children.size()) + " subgoals");
  }
  const Json golden = Json::parse(read_file(corpus("golden/brouwer_rule3.json")));
  o.require(trace_json(*t) == golden, "trace differs from the golden trace");
  o.detail = o.detail.empty() ? "3 rules oriented in " + std::to_string(secs) + " s, trace matches golden" : o.detail;
  return o;
}

harness::PropertyConfig config() {
  harness::PropertyConfig cfg;
  cfg.seed = 1;
  return cfg;
}

Outcome functionality() {
  Outcome o;
  std::string summary;
  for (const char* f : {"brouwer.horpo", "nat_rec.horpo"}) {
    harness::PropertyRunner runner(load(f), config());
    const auto beta = runner.beta();
    const auto eta = runner.eta();
    o.require(beta.samples >= 500, std::string(f) + ": only " + std::to_string(beta.samples) + " beta samples");
    o.require(eta.samples >= 200, std::string(f) + ": only " + std::to_string(eta.samples) + " eta samples");
    o.require(beta.failures == 0, std::string(f) + ": " + std::to_string(beta.failures) + " beta failures");
    o.require(eta.failures == 0, std::string(f) + ": " + std::to_string(eta.failures) + " eta failures");
    summary += std::string(summary.empty() ? "" : ", ") + f + " beta " + std::to_string(beta.samples) + "/" +
               std::to_string(beta.checks) + " eta " + std::to_string(eta.samples) + "/" + std::to_string(eta.checks);
  }
  if (o.pass) o.detail = summary + " (samples/reducts), 0 failures";
  return o;
}

Outcome exhaustive() {
  Outcome o;
  const auto r = harness::PropertyRunner::exhaustive(4, {});
  o.require(r.failures == 0, std::to_string(r.failures) + " violations");
  o.require(r.checks > 0, "no pairs enumerated");
  if (o.pass) o.detail = std::to_string(r.samples) + " terms, " + std::to_string(r.checks) + " pairs, 0 violations";
  return o;
}

Outcome sampled(const char* what, harness::SuiteResult (harness::PropertyRunner::*suite)()) {
  Outcome o;
  std::string summary;
  for (const char* f : {"brouwer.horpo", "nat_rec.horpo"}) {
    harness::PropertyRunner runner(load(f), config());
    const auto r = (runner.*suite)();
    o.require(r.samples >= 200, std::string(f) + ": only " + std::to_string(r.samples) + " " + what + " samples");
    o.require(r.failures == 0, std::string(f) + ": " + std::to_string(r.failures) + " violations");
    summary += std::string(summary.empty() ? "" : ", ") + f + " " + std::to_string(r.samples);
  }
  if (o.pass) o.detail = summary + " samples, 0 violations";
  return o;
}

Outcome axioms() {
  Outcome o;
  {
    const Problem p = load("brouwer.horpo");
    const Ordering ord = p.ordering();
    o.require(validate_axioms(ord.types, ord.universe).empty(), "Brouwer universe violates an axiom");
  }
  std::string out;
  const int code = run({"check", corpus("cyclic_sorts.horpo")}, &out);
  o.require(code == 2, "cyclic sorts exit " + std::to_string(code));
  o.require(out.find("well-foundedness") != std::string::npos, "no well-foundedness violation reported");
  std::size_t files = 0;
  for (const char* f : kCorpusFiles) {
    const Problem p = load(f);
    const Ordering ord = p.ordering();
    if (!validate_axioms(ord.types, ord.universe).empty()) continue;
    ++files;
    if (!ord.universe.empty()) o.require(!ord.acc.min_types().empty(), std::string(f) + ": no minimal type");
    for (const auto& m : ord.acc.min_types()) o.require(m.is_data(), std::string(f) + ": minimal arrow type");
    for (const auto& a : ord.universe)
      for (const auto& b : ord.universe)
        if (cmp_types(ord.types, a, b) == TypeCompare::EQ && a.is_data() != b.is_data())
          o.require(false, std::string(f) + ": " + a.str() + " EQ " + b.str());
  }
  if (o.pass) o.detail = "Brouwer valid, 2-cycle rejected with exit 2, " + std::to_string(files) + " valid corpus universes checked";
  return o;
}

Outcome quadratic() {
  Outcome o;
  const auto counts = harness::doubling_counts(4, 5);
  std::string ratios;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    const double r = double(counts[i].memo_entries) / double(counts[i - 1].memo_entries);
    o.require(r <= 4.5, "ratio " + std::to_string(r) + " at step " + std::to_string(i));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", r);
    ratios += std::string(ratios.empty() ? "" : " ") + buf;
  }
  for (const auto& c : counts) o.require(c.oriented, "family member not oriented");
  if (o.pass) o.detail = "memo growth per doubling: " + ratios;
  return o;
}

Outcome search() {
  Outcome o;
  const auto start = Clock::now();
  const auto res = harness::search_params(load("brouwer_stripped.horpo"));
  const double secs = seconds_since(start);
  o.require(res.found.has_value(), "no assignment found");
  o.require(secs < 60.0, "search took " + std::to_string(secs) + " s");
  if (res.found) o.require(harness::orients_all(*res.found), "assignment does not orient every rule");
  if (o.pass)
    o.detail = "found after " + std::to_string(res.candidates) + " candidates in " + std::to_string(secs) + " s";
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands = {
      {"check", corpus("brouwer.horpo"), "--traces"},
      {"--format", "json", "check", corpus("brouwer.horpo"), "--traces"},
      {"check", corpus("nat_rec.horpo"), "--traces"},
      {"check", corpus("cyclic_sorts.horpo")},
      {"trace", corpus("brouwer.horpo"), "--rule", "3"},
      {"--format", "json", "trace", corpus("brouwer.horpo"), "--rule", "3"},
      {"validate", corpus("brouwer.horpo")},
      {"search", corpus("brouwer_stripped.horpo")},
      {"properties", corpus("brouwer.horpo"), "--samples", "100"},
      {"--format", "json", "--seed", "42", "properties", corpus("nat_rec.horpo"), "--samples", "100"}};
  for (const auto& c : commands) {
    std::string out1, err1, out2, err2;
    const int a = run(c, &out1, &err1), b = run(c, &out2, &err2);
    std::string name;
    for (const auto& s : c) name += (name.empty() ? "" : " ") + s.substr(s.find_last_of('/') + 1);
    o.require(a == b && out1 == out2 && err1 == err2, "outputs differ for: " + name);
  }
  if (o.pass) o.detail = std::to_string(commands.size()) + " commands byte-identical across two runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Brouwer recursor oriented with golden trace", brouwer_recursor},
      {"beta and eta functionality", functionality},
      {"exhaustive irreflexivity and termination", exhaustive},
      {"stability", [] { return sampled("stability", &harness::PropertyRunner::stability); }},
      {"monotonicity", [] { return sampled("monotonicity", &harness::PropertyRunner::monotonicity); }},
      {"type-order axioms", axioms},
      {"quadratic memo growth", quadratic},
      {"parameter search", search},
      {"determinism", determinism}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << std::endl;
  }
  return failed ? 1 : 0;
}
