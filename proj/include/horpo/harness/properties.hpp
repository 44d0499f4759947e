#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "horpo/engine.hpp"
#include "horpo/harness/generator.hpp"
#include "horpo/harness/reduce.hpp"
#include "horpo/problem.hpp"

namespace horpo::harness {

struct PropertyConfig {
  std::uint64_t seed = 1;
  std::size_t max_size = 12;
  std::size_t beta_samples = 500;
  std::size_t eta_samples = 200;
  std::size_t irreflexivity_samples = 200;
  std::size_t stability_samples = 200;
  std::size_t monotonicity_samples = 200;
  std::size_t chain_samples = 50;
  std::size_t chain_bound = 64;
  /// Term size for exhaustive enumeration over the toy signature; 0 skips it.
  std::size_t exhaustive_size = 4;
  std::size_t max_attempts = 200;
  EngineOptions engine;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct Counterexample {
  std::vector<Term> original;
  std::vector<Term> shrunk;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::size_t samples = 0;   // samples that exercised the property
  std::size_t checks = 0;    // individual assertions
  std::size_t skipped = 0;   // samples where no premise could be produced
  std::size_t failures = 0;
  std::vector<Counterexample> examples;  // at most a few, in sample order

  bool ok() const { return failures == 0; }
};

struct PropertyReport {
  std::vector<SuiteResult> suites;

  bool ok() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
  }
  const SuiteResult* find(std::string_view name) const {
    for (const auto& s : suites)
      if (s.name == name) return &s;
    return nullptr;
  }
};

namespace detail {

inline constexpr std::size_t kMaxExamples = 3;

/// Runs `fn(i)` for `i < n` on worker threads and returns results by index.
template <class Fn>
auto parallel_map(std::size_t n, unsigned threads, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}, 0u))> {
  using R = decltype(fn(std::size_t{}, 0u));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::vector<R> out(n);
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < threads; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += threads) out[i] = fn(i, w);
    }));
  for (auto& j : jobs) j.get();
  return out;
}

struct SampleOutcome {
  bool exercised = false;
  std::size_t checks = 0;
  std::optional<Counterexample> failure;
};

inline SuiteResult collect(std::string name, const std::vector<SampleOutcome>& outs) {
  SuiteResult r;
  r.name = std::move(name);
  for (const auto& o : outs) {
    if (!o.exercised) {
      ++r.skipped;
      continue;
    }
    ++r.samples;
    r.checks += o.checks;
    if (o.failure) {
      ++r.failures;
      if (r.examples.size() < kMaxExamples) r.examples.push_back(*o.failure);
    }
  }
  return r;
}

}  // namespace detail

/// Shrinks `t` while `still_fails` holds by replacing subterms with
/// variables of the same type: first those already free in `t`, then a
/// fresh one.
inline Term shrink(const Term& t, const std::function<bool(const Term&)>& still_fails) {
  Term cur = t;
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<std::pair<Position, Term>> subs;
    for_each_subterm(cur, [&](const Term& s, const Position& p) {
      if (!p.empty() && s.size() > 1) subs.emplace_back(p, s);
    });
    for (const auto& [p, s] : subs) {
      std::vector<Term> replacements;
      const auto bound = binders_above(cur, p);
      for (const auto& [name, type] : cur.free_vars())
        if (type == s.type() && !bound.count(name)) replacements.push_back(Term::var(name, type));
      std::set<std::string> avoid;
      collect_names(cur, avoid);
      replacements.push_back(Term::var(fresh_var("z", avoid), s.type()));
      for (const auto& r : replacements) {
        Term cand = replace_at(cur, p, r);
        if (still_fails(cand)) {
          cur = std::move(cand);
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
  }
  return cur;
}

/// Checks the reduction-ordering properties of the ordering of `p` on
/// generated terms. Each sample draws from its own stream derived from the
/// seed, so results do not depend on the number of threads.
class PropertyRunner {
 public:
  PropertyRunner(const Problem& p, PropertyConfig cfg)
      : problem_(p), ord_(p.ordering()), cfg_(std::move(cfg)) {
    for (const auto& t : ord_.universe) types_.push_back(t);
  }

  const Ordering& ordering() const { return ord_; }

  PropertyReport run() {
    PropertyReport rep;
    rep.suites.push_back(beta());
    rep.suites.push_back(eta());
    rep.suites.push_back(irreflexivity());
    rep.suites.push_back(stability());
    rep.suites.push_back(monotonicity());
    rep.suites.push_back(chains());
    if (cfg_.exhaustive_size > 0) rep.suites.push_back(exhaustive(cfg_.exhaustive_size, cfg_.engine));
    return rep;
  }

  SuiteResult beta() {
    return sampled("beta-functionality", cfg_.beta_samples, 1, {0.6, 0.0},
                   [&](Generator& g, Engine& e) { return beta_sample(g, e, false); });
  }

  SuiteResult eta() {
    return sampled("eta-functionality", cfg_.eta_samples, 2, {0.1, 0.6},
                   [&](Generator& g, Engine& e) { return beta_sample(g, e, true); });
  }

  SuiteResult irreflexivity() {
    return sampled("irreflexivity", cfg_.irreflexivity_samples, 3, {0.2, 0.1},
                   [&](Generator& g, Engine& e) {
                     detail::SampleOutcome o;
                     auto s = random_term(g);
                     if (!s) return o;
                     o.exercised = true;
                     o.checks = 1;
                     if (e.gt({}, *s, *s)) {
                       auto fails = [&](const Term& u) { return Engine(ord_, cfg_.engine).gt({}, u, u) != nullptr; };
                       o.failure = Counterexample{{*s}, {shrink(*s, fails)}, "s > s"};
                     }
                     return o;
                   });
  }

  SuiteResult stability() {
    return sampled("stability", cfg_.stability_samples, 4, {0.3, 0.1},
                   [&](Generator& g, Engine& e) {
                     detail::SampleOutcome o;
                     for (std::size_t a = 0; a < cfg_.max_attempts; ++a) {
                       auto pr = related_pair(g, e, false);
                       if (!pr) continue;
                       auto [s, t] = *pr;
                       Substitution gamma;
                       for (const auto* fv : {&s.free_vars(), &t.free_vars()})
                         for (const auto& [name, type] : *fv) {
                           if (gamma.count(name) || g.below(3) == 0) continue;
                           try {
                             gamma.emplace(name, g.gen_term(problem_.env(), type, cfg_.max_size / 2 + 1));
                           } catch (const GenError&) {
                           }
                         }
                       if (gamma.empty()) continue;
                       const Term s2 = substitute(s, gamma), t2 = substitute(t, gamma);
                       o.exercised = true;
                       o.checks = 1;
                       if (!Engine(ord_, cfg_.engine).gt_type({}, s2, t2))
                         o.failure = Counterexample{{s, t, s2, t2}, {s2, t2}, "s > t but not s.g > t.g"};
                       return o;
                     }
                     return o;
                   });
  }

  SuiteResult monotonicity() {
    return sampled("monotonicity", cfg_.monotonicity_samples, 5, {0.3, 0.1},
                   [&](Generator& g, Engine& e) {
                     detail::SampleOutcome o;
                     for (std::size_t a = 0; a < cfg_.max_attempts; ++a) {
                       auto pr = related_pair(g, e, true);
                       if (!pr) continue;
                       auto [s, t] = *pr;
                       auto ctx = context_for(g, s, t);
                       if (!ctx) continue;
                       const auto& [u, p] = *ctx;
                       const Term us = replace_at(u, p, s), ut = replace_at(u, p, t);
                       o.exercised = true;
                       o.checks = 1;
                       if (!Engine(ord_, cfg_.engine).gt_type({}, us, ut))
                         o.failure = Counterexample{{s, t, us, ut}, {us, ut}, "s > t but not u[s] > u[t]"};
                       return o;
                     }
                     return o;
                   });
  }

  /// Bounded search for long descending chains. A chain reaching the bound
  /// is reported as a finding; it does not prove non-termination.
  SuiteResult chains() {
    return sampled("descending-chains", cfg_.chain_samples, 6, {0.3, 0.1},
                   [&](Generator& g, Engine& e) {
                     detail::SampleOutcome o;
                     auto s = random_term(g);
                     if (!s) return o;
                     o.exercised = true;
                     std::vector<Term> chain{*s};
                     while (chain.size() <= cfg_.chain_bound) {
                       const Term& cur = chain.back();
                       std::vector<Term> cands = beta_step(cur);
                       for_each_subterm(cur, [&](const Term& sub, const Position& p) {
                         if (!p.empty()) cands.push_back(sub);
                       });
                       for (int k = 0; k < 8; ++k) {
                         try {
                           cands.push_back(g.gen_term(problem_.env(), cur.type(), cur.size()));
                         } catch (const GenError&) {
                         }
                       }
                       std::optional<Term> next;
                       for (const auto& c : cands) {
                         ++o.checks;
                         if (!alpha_eq(c, cur) && e.gt_type({}, cur, c)) {
                           next = c;
                           break;
                         }
                       }
                       if (!next) break;
                       chain.push_back(*next);
                     }
                     if (chain.size() > cfg_.chain_bound)
                       o.failure = Counterexample{chain, {chain.front()},
                                                  "descending chain reached the bound of " +
                                                      std::to_string(cfg_.chain_bound)};
                     return o;
                   });
  }

 private:
  struct Bias {
    double redex;
    double eta;
  };

  template <class Sample>
  SuiteResult sampled(std::string name, std::size_t n, std::uint64_t tag, Bias bias, Sample&& sample) {
    const unsigned threads =
        cfg_.threads ? cfg_.threads : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::unique_ptr<Generator>> gens;
    for (unsigned w = 0; w < threads; ++w) {
      GenConfig gc{cfg_.seed, cfg_.max_size, bias.redex, bias.eta};
      gens.push_back(std::make_unique<Generator>(ord_.sig, gc));
      gens.back()->add_types(ord_.universe.types());
    }
    const std::uint64_t root = split_seed(cfg_.seed, tag);
    auto outs = detail::parallel_map(n, threads, [&](std::size_t i, unsigned w) {
      Generator& g = *gens[w];
      g.reseed(split_seed(root, i));
      Engine e(ord_, cfg_.engine);
      try {
        return sample(g, e);
      } catch (const EngineError& err) {
        detail::SampleOutcome o;
        o.exercised = true;
        o.checks = 1;
        o.failure = Counterexample{{}, {}, err.what()};
        return o;
      }
    });
    return detail::collect(std::move(name), outs);
  }

  std::optional<Term> random_term(Generator& g, bool want_redex = false, bool want_eta = false) {
    if (types_.empty()) return std::nullopt;
    for (std::size_t a = 0; a < cfg_.max_attempts; ++a) {
      const Type& tau = types_[g.below(types_.size())];
      try {
        Term t = g.gen_term(problem_.env(), tau);
        if (want_redex && !has_beta_redex(t)) continue;
        if (want_eta && eta_step(t).empty()) continue;
        return t;
      } catch (const GenError&) {
      }
    }
    return std::nullopt;
  }

  detail::SampleOutcome beta_sample(Generator& g, Engine& e, bool eta) {
    detail::SampleOutcome o;
    auto s = random_term(g, !eta, eta);
    if (!s) return o;
    o.exercised = true;
    auto step = [eta](const Term& u) { return eta ? eta_step(u) : beta_step(u); };
    for (const auto& t : step(*s)) {
      ++o.checks;
      if (e.gt_type({}, *s, t)) continue;
      auto fails = [&](const Term& u) {
        Engine e2(ord_, cfg_.engine);
        for (const auto& r : step(u))
          if (!e2.gt_type({}, u, r)) return true;
        return false;
      };
      const Term small = shrink(*s, fails);
      std::vector<Term> witness{small};
      for (const auto& r : step(small))
        if (!Engine(ord_, cfg_.engine).gt_type({}, small, r)) {
          witness.push_back(r);
          break;
        }
      o.failure = Counterexample{{*s, t}, witness, eta ? "eta-reduct not below" : "beta-reduct not below"};
      break;
    }
    return o;
  }

  // A pair with `s >_type t`, drawn from rule instances, reduction steps or
  // subterms. With `same_type` the two sides have identical types.
  std::optional<std::pair<Term, Term>> related_pair(Generator& g, Engine& e, bool same_type) {
    std::vector<std::pair<Term, Term>> cands;
    switch (g.below(3)) {
      case 0:
        if (!problem_.rules.empty()) {
          const Rule& r = problem_.rules[g.below(problem_.rules.size())];
          cands.emplace_back(r.lhs, r.rhs);
          break;
        }
        [[fallthrough]];
      case 1: {
        auto s = random_term(g, true);
        if (!s) return std::nullopt;
        for (const auto& t : beta_step(*s)) cands.emplace_back(*s, t);
        break;
      }
      default: {
        auto s = random_term(g);
        if (!s) return std::nullopt;
        for_each_subterm(*s, [&](const Term& sub, const Position& p) {
          if (!p.empty()) cands.emplace_back(*s, sub);
        });
        break;
      }
    }
    if (cands.empty()) return std::nullopt;
    const std::size_t start = g.below(cands.size());
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const auto& [s, t] = cands[(start + k) % cands.size()];
      if (same_type && s.type() != t.type()) continue;
      if (e.gt_type({}, s, t)) return cands[(start + k) % cands.size()];
    }
    return std::nullopt;
  }

  // A context with a hole of the type of `s`, below no binder capturing a
  // free variable of `s` or `t`.
  std::optional<std::pair<Term, Position>> context_for(Generator& g, const Term& s, const Term& t) {
    std::set<std::string> fv = free_var_names(s);
    for (const auto& n : free_var_names(t)) fv.insert(n);
    for (std::size_t a = 0; a < 20; ++a) {
      auto u = random_term(g);
      if (!u) return std::nullopt;
      std::vector<Position> holes;
      for_each_subterm(*u, [&](const Term& sub, const Position& p) {
        if (p.empty() || sub.type() != s.type()) return;
        for (const auto& b : binders_above(*u, p))
          if (fv.count(b)) return;
        holes.push_back(p);
      });
      if (!holes.empty()) return std::make_pair(*u, holes[g.below(holes.size())]);
    }
    return std::nullopt;
  }

 public:
  /// Irreflexivity and termination of the engine on every pair of terms up
  /// to `size` over a fixed four-symbol signature.
  static SuiteResult exhaustive(std::size_t size, const EngineOptions& opts = {});

 private:
  Problem problem_;
  Ordering ord_;
  PropertyConfig cfg_;
  std::vector<Type> types_;
};

// ---------------------------------------------------------------------------
// Exhaustive enumeration

/// The toy problem used for exhaustive checks: one sort, constant `a`,
/// unary `f`, binary lexicographic `g`, higher-order `h`, and variables
/// `x : T`, `F : T -> T`.
inline Problem toy_problem() {
  return parse_problem(R"(sort T ;
fun a : [] -> T ;
fun f : [T] -> T ;
fun g : [T, T] -> T ;
fun h : [T -> T] -> T ;
prec h > g ;
prec g > f ;
prec f > a ;
status g lex ;
var x : T ;
var F : T -> T ;
)");
}

/// Every term of type `tau` with exactly `n` nodes, over `p`'s symbols, its
/// variables and binders named `y1, y2, ...`, using only the types `T` and
/// `T -> T` for applications.
inline std::vector<Term> enumerate_terms(const Problem& p, const Environment& env, const Type& tau,
                                         std::size_t n, std::size_t depth = 0) {
  std::vector<Term> out;
  if (n == 0) return out;
  if (n == 1)
    for (const auto& [name, type] : env)
      if (type == tau) out.push_back(Term::var(name, type));
  for (const auto& f : p.sig.funs()) {
    if (f.out_type != tau) continue;
    if (f.arity() == 0) {
      if (n == 1) out.push_back(Term::fun(f, {}));
      continue;
    }
    // Distribute n - 1 nodes over the arguments.
    std::function<void(std::size_t, std::size_t, std::vector<Term>&)> go =
        [&](std::size_t i, std::size_t left, std::vector<Term>& args) {
          if (i == f.arity()) {
            if (left == 0) out.push_back(Term::fun(f, args));
            return;
          }
          for (std::size_t k = 1; k <= left; ++k)
            for (const auto& a : enumerate_terms(p, env, f.arg_types[i], k, depth)) {
              args.push_back(a);
              go(i + 1, left - k, args);
              args.pop_back();
            }
        };
    std::vector<Term> args;
    go(0, n - 1, args);
  }
  if (tau.is_arrow() && n >= 2) {
    const std::string y = "y" + std::to_string(depth + 1);
    Environment env2 = env;
    env2[y] = tau.domain();
    for (const auto& b : enumerate_terms(p, env2, tau.codomain(), n - 1, depth + 1))
      out.push_back(Term::abs(y, tau.domain(), b));
  }
  if (tau.is_data() && n >= 3) {
    const Type fn = Type::arrow(tau, tau);
    for (std::size_t k = 1; k + 1 < n; ++k)
      for (const auto& u : enumerate_terms(p, env, fn, k, depth))
        for (const auto& v : enumerate_terms(p, env, tau, n - 1 - k, depth)) out.push_back(Term::app(u, v));
  }
  return out;
}

inline SuiteResult PropertyRunner::exhaustive(std::size_t size, const EngineOptions& opts) {
  const Problem p = toy_problem();
  const Ordering ord = p.ordering();
  const Type t = Type::data("T");
  std::vector<Term> terms;
  for (const Type& tau : {t, Type::arrow(t, t)})
    for (std::size_t n = 1; n <= size; ++n)
      for (auto& u : enumerate_terms(p, p.env(), tau, n)) terms.push_back(std::move(u));

  SuiteResult r;
  r.name = "exhaustive";
  auto outs = detail::parallel_map(terms.size(), 0, [&](std::size_t i, unsigned) {
    detail::SampleOutcome o;
    o.exercised = true;
    const Term& s = terms[i];
    for (const auto& u : terms) {
      ++o.checks;
      try {
        Engine e(ord, opts);
        e.gt({}, s, u);
        if (alpha_eq(s, u) && e.gt({}, s, u) && !o.failure)
          o.failure = Counterexample{{s}, {s}, "s > s"};
      } catch (const EngineError& err) {
        if (!o.failure) o.failure = Counterexample{{s, u}, {s, u}, err.what()};
      }
    }
    return o;
  });
  r = detail::collect("exhaustive", outs);
  return r;
}

/// Runs every suite on `p`.
inline PropertyReport run_properties(const Problem& p, const PropertyConfig& cfg) {
  return PropertyRunner(p, cfg).run();
}

}  // namespace horpo::harness
