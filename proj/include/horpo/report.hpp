#pragma once

#include <chrono>
#include <cstddef>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "horpo/engine.hpp"
#include "horpo/problem.hpp"
#include "horpo/trace.hpp"
#include "horpo/type_order.hpp"

namespace horpo {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Trace serialization

namespace detail {

inline std::string join_terms(const std::vector<Term>& ts) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ',';
    out += ts[i].str();
  }
  return out;
}

inline std::string bound_set_str(const BoundVarSet& x) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, type] : x) {
    if (!first) out += ',';
    first = false;
    out += name + ":" + type.str("→");
  }
  return out + "}";
}

inline std::string relation_symbol(const ProofTrace& t) {
  switch (t.label) {
    case CaseLabel::Refl: return "≥";
    case CaseLabel::AccApply: return t.kind == GoalKind::ACC_GT_TYPE ? ">acc" : "≥acc";
    default: return ">";
  }
}

inline void trace_lines(const ProofTrace& t, std::size_t depth, std::string& out) {
  const std::string indent(2 * depth, ' ');
  out += indent;
  if (is_ordering_case(t.label)) out += "case ";
  out += to_string(t.label);
  out += ": ";
  if (t.label == CaseLabel::MulExt) {
    out += "{" + join_terms(t.lhs_args) + "} > {" + join_terms(t.rhs_args) + "}";
  } else if (t.label == CaseLabel::LexExt) {
    out += "(" + join_terms(t.lhs_args) + ") > (" + join_terms(t.rhs_args) + ")";
  } else {
    out += t.lhs.str() + " " + relation_symbol(t) + " " + t.rhs.str();
  }
  if (!t.bound.empty() && t.label != CaseLabel::MulExt && t.label != CaseLabel::LexExt)
    out += " with X=" + bound_set_str(t.bound);
  out += '\n';
  if (!t.aux.empty()) {
    out += indent + "  where ";
    for (std::size_t i = 0; i < t.aux.size(); ++i) {
      if (i) out += ", ";
      out += t.aux[i].first + " " + (t.aux[i].second.empty() ? std::string("()") : t.aux[i].second);
    }
    out += '\n';
  }
  for (const auto& c : t.children) trace_lines(*c, depth + 1, out);
}

}  // namespace detail

/// Indented text form: one node per line, `case <label>: <lhs> > <rhs>`,
/// followed by a `where` line for auxiliary choices.
inline std::string trace_text(const ProofTrace& t) {
  std::string out;
  detail::trace_lines(t, 0, out);
  return out;
}

/// Structured form with a fixed field order.
inline Json trace_json(const ProofTrace& t) {
  Json j;
  j["caseLabel"] = std::string(to_string(t.label));
  j["relation"] = std::string(to_string(t.kind));
  Json x = Json::array();
  for (const auto& [name, type] : t.bound) x.push_back({{"name", name}, {"type", type.str()}});
  j["X"] = std::move(x);
  if (t.label == CaseLabel::MulExt || t.label == CaseLabel::LexExt) {
    Json l = Json::array(), r = Json::array();
    for (const auto& a : t.lhs_args) l.push_back(a.str());
    for (const auto& a : t.rhs_args) r.push_back(a.str());
    j["lhsArgs"] = std::move(l);
    j["rhsArgs"] = std::move(r);
  } else {
    j["lhs"] = t.lhs.str();
    j["rhs"] = t.rhs.str();
  }
  Json aux = Json::array();
  for (const auto& [k, v] : t.aux) aux.push_back({{"key", k}, {"value", v}});
  j["aux"] = std::move(aux);
  Json kids = Json::array();
  for (const auto& c : t.children) kids.push_back(trace_json(*c));
  j["children"] = std::move(kids);
  return j;
}

enum class TraceFormat { Text, Json };

inline std::string serialize_trace(const ProofTrace& t, TraceFormat format) {
  if (format == TraceFormat::Text) return trace_text(t);
  return trace_json(t).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Checking a whole problem

enum class Verdict { Oriented, NotOriented, IllFormed, EngineFailure };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Oriented: return "oriented";
    case Verdict::NotOriented: return "not-oriented";
    case Verdict::IllFormed: return "ill-formed";
    case Verdict::EngineFailure: return "engine-error";
  }
  return "?";
}

struct RuleResult {
  std::size_t index = 0;  // 1-based
  Rule rule;
  Verdict verdict = Verdict::NotOriented;
  TracePtr trace;
  std::string message;
  std::size_t memo_entries = 0;
  double millis = 0;
};

struct Report {
  std::vector<AxiomViolation> axioms;
  std::vector<std::string> parameter_errors;
  std::vector<RuleResult> rules;

  bool valid() const { return axioms.empty() && parameter_errors.empty(); }

  bool ok() const {
    if (!valid()) return false;
    for (const auto& r : rules)
      if (r.verdict != Verdict::Oriented) return false;
    return true;
  }

  /// 0 when every rule is oriented, 1 when some rule is not, 2 on
  /// validation or input errors.
  int exit_code() const {
    if (!valid()) return 2;
    int code = 0;
    for (const auto& r : rules) {
      if (r.verdict == Verdict::IllFormed || r.verdict == Verdict::EngineFailure) return 2;
      if (r.verdict == Verdict::NotOriented) code = 1;
    }
    return code;
  }

  std::string_view status() const {
    switch (exit_code()) {
      case 0: return "ok";
      case 1: return "not-oriented";
      default: return "error";
    }
  }
};

struct CheckOptions {
  EngineOptions engine;
  bool parallel = true;
};

/// Orients one rule with a private engine.
inline RuleResult check_rule(const Ordering& ord, const Rule& rule, std::size_t index,
                             const EngineOptions& opts = {}) {
  RuleResult r;
  r.index = index;
  r.rule = rule;
  if (rule.lhs.is_var()) {
    r.verdict = Verdict::IllFormed;
    r.message = "left-hand side is a variable";
    return r;
  }
  const auto start = std::chrono::steady_clock::now();
  Engine engine(ord, opts);
  try {
    r.trace = engine.orient(rule.lhs, rule.rhs);
    r.verdict = r.trace ? Verdict::Oriented : Verdict::NotOriented;
  } catch (const EngineError& e) {
    r.verdict = Verdict::EngineFailure;
    r.message = e.what();
  }
  r.memo_entries = engine.memo_entries();
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Validates the ordering parameters, then orients every rule. Rules are
/// checked concurrently when `opts.parallel` is set; results are in rule
/// order either way.
inline Report check_problem(const Problem& p, const CheckOptions& opts = {}) {
  Report rep;
  const Ordering ord = p.ordering();
  rep.axioms = validate_axioms(ord.types, ord.universe);
  rep.parameter_errors = ord.parameter_errors();
  if (!rep.valid()) return rep;
  if (opts.parallel && p.rules.size() > 1) {
    std::vector<std::future<RuleResult>> jobs;
    for (std::size_t i = 0; i < p.rules.size(); ++i)
      jobs.push_back(std::async(std::launch::async, [&ord, &p, &opts, i] {
        return check_rule(ord, p.rules[i], i + 1, opts.engine);
      }));
    for (auto& j : jobs) rep.rules.push_back(j.get());
  } else {
    for (std::size_t i = 0; i < p.rules.size(); ++i)
      rep.rules.push_back(check_rule(ord, p.rules[i], i + 1, opts.engine));
  }
  return rep;
}

inline std::string rule_str(const Rule& r) { return r.lhs.str() + " -> " + r.rhs.str(); }

inline Json axioms_json(const std::vector<AxiomViolation>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back({{"axiom", std::string(to_string(v.axiom))}, {"message", v.message}});
  return a;
}

/// Text report. With `traces`, oriented rules are followed by their trace.
inline std::string report_text(const Report& rep, bool traces = false, bool timing = false) {
  std::ostringstream out;
  for (const auto& v : rep.axioms) out << "axiom violation (" << to_string(v.axiom) << "): " << v.message << '\n';
  for (const auto& e : rep.parameter_errors) out << "parameter error: " << e << '\n';
  for (const auto& r : rep.rules) {
    out << "rule " << r.index << ": " << rule_str(r.rule) << " : " << to_string(r.verdict);
    if (r.trace) out << " (case " << to_string(r.trace->label) << ")";
    if (!r.message.empty()) out << ": " << r.message;
    if (timing) out << " [" << r.millis << " ms]";
    out << '\n';
    if (traces && r.trace) out << trace_text(*r.trace);
  }
  out << "status: " << rep.status() << '\n';
  return out.str();
}

inline Json report_json(const Report& rep, bool traces = false, bool timing = false) {
  Json j;
  j["status"] = std::string(rep.status());
  j["axioms"] = axioms_json(rep.axioms);
  j["parameterErrors"] = rep.parameter_errors;
  Json rules = Json::array();
  for (const auto& r : rep.rules) {
    Json o;
    o["index"] = r.index;
    o["rule"] = rule_str(r.rule);
    o["verdict"] = std::string(to_string(r.verdict));
    if (!r.message.empty()) o["message"] = r.message;
    o["memoEntries"] = r.memo_entries;
    if (timing) o["millis"] = r.millis;
    if (traces && r.trace) o["trace"] = trace_json(*r.trace);
    rules.push_back(std::move(o));
  }
  j["rules"] = std::move(rules);
  return j;
}

}  // namespace horpo
