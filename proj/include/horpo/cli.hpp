#pragma once

#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "horpo/harness/properties.hpp"
#include "horpo/harness/search.hpp"
#include "horpo/problem.hpp"
#include "horpo/report.hpp"

namespace horpo {

namespace cli_detail {

inline Problem load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_problem(text);
}

inline std::string parameter_lines(const Problem& p) {
  std::istringstream all(print_problem(p));
  std::string out;
  for (std::string line; std::getline(all, line);)
    if (line.rfind("order ", 0) == 0 || line.rfind("prec ", 0) == 0 || line.rfind("status ", 0) == 0)
      out += line + "\n";
  return out;
}

inline Json suite_json(const harness::SuiteResult& s) {
  Json j;
  j["name"] = s.name;
  j["samples"] = s.samples;
  j["checks"] = s.checks;
  j["skipped"] = s.skipped;
  j["failures"] = s.failures;
  Json ex = Json::array();
  for (const auto& c : s.examples) {
    Json e;
    e["detail"] = c.detail;
    Json orig = Json::array(), shrunk = Json::array();
    for (const auto& t : c.original) orig.push_back(t.str());
    for (const auto& t : c.shrunk) shrunk.push_back(t.str());
    e["original"] = std::move(orig);
    e["shrunk"] = std::move(shrunk);
    ex.push_back(std::move(e));
  }
  j["counterexamples"] = std::move(ex);
  return j;
}

}  // namespace cli_detail

/// Entry point of the `horpo` command; returns the exit code. Output goes
/// to `out`, diagnostics to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"HORPO termination checker for higher-order rewrite rules", "horpo"};
  app.require_subcommand(1);

  std::string format = "text";
  std::uint64_t seed = 1;
  std::size_t max_depth = 0;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "Random seed for generated samples");
  app.add_option("--max-depth", max_depth, "Recursion guard for the decision procedure (0: automatic)");
  app.fallthrough();

  std::string file;
  auto* check = app.add_subcommand("check", "Orient every rule of a problem");
  check->add_option("file", file, "Problem file")->required();
  bool traces = false, timing = false;
  check->add_flag("--traces", traces, "Print the proof of each oriented rule");
  check->add_flag("--timing", timing, "Include per-rule timings");

  auto* trace = app.add_subcommand("trace", "Print the proof trace of one rule");
  trace->add_option("file", file, "Problem file")->required();
  std::size_t rule = 1;
  trace->add_option("--rule", rule, "Rule number, from 1")->required();

  auto* validate = app.add_subcommand("validate", "Check the type ordering and parameters only");
  validate->add_option("file", file, "Problem file")->required();

  auto* search = app.add_subcommand("search", "Search for a sort order, precedence and statuses");
  search->add_option("file", file, "Problem file")->required();
  std::size_t max_symbols = 8;
  search->add_option("--max-symbols", max_symbols, "Refuse problems with more function symbols");

  auto* props = app.add_subcommand("properties", "Run the property-based checks of the ordering");
  props->add_option("file", file, "Problem file")->required();
  std::size_t samples = 0, exhaustive = 4, max_size = 12;
  props->add_option("--samples", samples, "Samples per suite (default: 500 beta, 200 others)");
  props->add_option("--exhaustive-size", exhaustive, "Term size for exhaustive pairs (0: skip)");
  props->add_option("--max-size", max_size, "Largest generated term");

  std::vector<const char*> argv{"horpo"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : 2;
  }

  const bool json = format == "json";
  EngineOptions eopts;
  if (max_depth) eopts.max_depth = max_depth;

  try {
    const Problem p = cli_detail::load(file);

    if (*check) {
      CheckOptions opts;
      opts.engine = eopts;
      const Report rep = check_problem(p, opts);
      if (json) out << report_json(rep, traces, timing).dump(2) << '\n';
      else out << report_text(rep, traces, timing);
      if (!rep.valid()) err << "error: invalid ordering parameters\n";
      return rep.exit_code();
    }

    if (*trace) {
      if (rule == 0 || rule > p.rules.size()) {
        err << "error: rule " << rule << " does not exist (" << p.rules.size() << " rules)\n";
        return 2;
      }
      const Ordering ord = p.ordering();
      const auto violations = validate_axioms(ord.types, ord.universe);
      const auto perr = ord.parameter_errors();
      if (!violations.empty() || !perr.empty()) {
        for (const auto& v : violations) err << "axiom violation (" << to_string(v.axiom) << "): " << v.message << '\n';
        for (const auto& e : perr) err << "parameter error: " << e << '\n';
        return 2;
      }
      const RuleResult r = check_rule(ord, p.rules[rule - 1], rule, eopts);
      if (!r.trace) {
        if (json) {
          Json j;
          j["rule"] = rule_str(r.rule);
          j["verdict"] = std::string(to_string(r.verdict));
          out << j.dump(2) << '\n';
        } else {
          out << "rule " << rule << ": " << rule_str(r.rule) << " : " << to_string(r.verdict) << '\n';
        }
        if (!r.message.empty()) err << "error: " << r.message << '\n';
        return r.verdict == Verdict::NotOriented ? 1 : 2;
      }
      out << serialize_trace(*r.trace, json ? TraceFormat::Json : TraceFormat::Text);
      return 0;
    }

    if (*validate) {
      const Ordering ord = p.ordering();
      const auto violations = validate_axioms(ord.types, ord.universe);
      const auto perr = ord.parameter_errors();
      const bool ok = violations.empty() && perr.empty();
      if (json) {
        Json j;
        j["status"] = ok ? "valid" : "invalid";
        j["axioms"] = axioms_json(violations);
        j["parameterErrors"] = perr;
        Json mins = Json::array();
        for (const auto& t : ord.acc.min_types()) mins.push_back(t.str());
        j["minimalTypes"] = std::move(mins);
        out << j.dump(2) << '\n';
      } else {
        for (const auto& v : violations) out << "axiom violation (" << to_string(v.axiom) << "): " << v.message << '\n';
        for (const auto& e : perr) out << "parameter error: " << e << '\n';
        out << "minimal types:";
        for (const auto& t : ord.acc.min_types()) out << ' ' << t.str();
        out << "\nstatus: " << (ok ? "valid" : "invalid") << '\n';
      }
      return ok ? 0 : 2;
    }

    if (*search) {
      harness::SearchBounds b;
      b.max_symbols = max_symbols;
      b.engine = eopts;
      const auto res = harness::search_params(p, b);
      if (json) {
        Json j;
        j["status"] = res.found ? "found" : "exhausted";
        j["candidates"] = res.candidates;
        if (res.found) {
          j["weight"] = res.weight;
          j["parameters"] = cli_detail::parameter_lines(*res.found);
        }
        out << j.dump(2) << '\n';
      } else if (res.found) {
        out << "found after " << res.candidates << " candidates (weight " << res.weight << ")\n"
            << cli_detail::parameter_lines(*res.found);
      } else {
        out << "exhausted after " << res.candidates << " candidates\n";
      }
      return res.found ? 0 : 1;
    }

    if (*props) {
      const Ordering ord = p.ordering();
      if (!validate_axioms(ord.types, ord.universe).empty() || !ord.parameter_errors().empty()) {
        err << "error: the problem does not validate\n";
        return 2;
      }
      harness::PropertyConfig cfg;
      cfg.seed = seed;
      cfg.max_size = max_size;
      cfg.exhaustive_size = exhaustive;
      cfg.engine = eopts;
      if (samples) {
        cfg.beta_samples = cfg.eta_samples = cfg.irreflexivity_samples = samples;
        cfg.stability_samples = cfg.monotonicity_samples = samples;
      }
      const auto rep = harness::run_properties(p, cfg);
      if (json) {
        Json j;
        j["status"] = rep.ok() ? "ok" : "findings";
        j["seed"] = seed;
        Json suites = Json::array();
        for (const auto& s : rep.suites) suites.push_back(cli_detail::suite_json(s));
        j["suites"] = std::move(suites);
        out << j.dump(2) << '\n';
      } else {
        for (const auto& s : rep.suites) {
          out << "suite " << s.name << ": samples " << s.samples << ", checks " << s.checks << ", skipped "
              << s.skipped << ", failures " << s.failures << '\n';
          for (const auto& c : s.examples) {
            out << "  counterexample (" << c.detail << "):";
            for (const auto& t : c.shrunk) out << ' ' << t.str();
            out << '\n';
          }
        }
        out << "status: " << (rep.ok() ? "ok" : "findings") << '\n';
      }
      return rep.ok() ? 0 : 1;
    }
  } catch (const harness::SearchError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << file << ": " << e.what() << '\n';
    return 2;
  }
  return 2;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, out, err);
}

}  // namespace horpo
