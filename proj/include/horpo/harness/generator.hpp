#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "horpo/term.hpp"
#include "horpo/type.hpp"

namespace horpo::harness {

class GenError : public Error {
 public:
  using Error::Error;
};

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t max_size = 12;
  /// Relative weight of building a beta-redex where a term of data type is
  /// needed; other choices weigh 1 each.
  double redex_weight = 0.2;
  /// Relative weight of building an eta-expanded `λx.@(v,x)` at arrow types.
  double eta_weight = 0.0;
};

/// splitmix64: derives independent stream seeds from a root seed.
inline std::uint64_t split_seed(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Random well-typed terms over a signature. The same configuration and
/// the same sequence of calls give the same terms.
class Generator {
 public:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;

  Generator(const Signature& sig, GenConfig cfg) : sig_(&sig), cfg_(cfg), rng_(cfg.seed) {
    for (const auto& f : sig.funs()) {
      add_closure(f.out_type);
      for (const auto& a : f.arg_types) add_closure(a);
    }
  }

  void reseed(std::uint64_t seed) { rng_.seed(seed); }
  const GenConfig& config() const { return cfg_; }
  std::mt19937_64& rng() { return rng_; }

  /// Extra types used as binder types of generated redexes.
  void add_types(const std::set<Type>& ts) {
    for (const auto& t : ts) add_closure(t);
  }

  /// Size of the smallest term of type `t` in `env`, or `kInf`.
  std::size_t min_size(const Environment& env, const Type& t) {
    add_closure(t);
    for (const auto& [_, vt] : env) add_closure(vt);
    return ms(env_types(env), t);
  }

  /// A term of type `tau` in `env` with at most `max_size` nodes.
  Term gen_term(const Environment& env, const Type& tau) { return gen_term(env, tau, cfg_.max_size); }

  Term gen_term(const Environment& env, const Type& tau, std::size_t max_size) {
    const std::size_t need = min_size(env, tau);
    if (need >= kInf) throw GenError("type " + tau.str() + " is not inhabited");
    if (need > max_size)
      throw GenError("no term of type " + tau.str() + " within size " + std::to_string(max_size));
    const std::size_t budget = need + below(max_size - need + 1);
    std::vector<std::pair<std::string, Type>> scope(env.begin(), env.end());
    return gen(scope, tau, budget);
  }

  std::size_t below(std::size_t n) { return n <= 1 ? 0 : static_cast<std::size_t>(rng_() % n); }
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

 private:
  using TypeSet = std::set<Type>;
  using Scope = std::vector<std::pair<std::string, Type>>;

  struct Option {
    enum Kind { Head, Lambda, Eta, Redex } kind;
    double weight;
    std::string head;  // variable or symbol
    bool is_var = false;
    std::vector<Type> parts;  // argument types (Head) or binder type (Redex)
    std::size_t min = 0;
  };

  void add_closure(const Type& t) {
    if (!closure_.insert(t).second) return;
    for (const auto& a : t.args()) add_closure(a);
    tables_.clear();
  }

  static TypeSet env_types(const Environment& env) {
    TypeSet s;
    for (const auto& [_, t] : env) s.insert(t);
    return s;
  }

  static TypeSet scope_types(const Scope& scope) {
    TypeSet s;
    for (const auto& [_, t] : scope) s.insert(t);
    return s;
  }

  static std::size_t add(std::size_t a, std::size_t b) { return std::min(kInf, a + b); }

  // Minimal sizes of data types under the variable types `e`, computed as a
  // least fixpoint. Arrow types reduce to their codomain under `e` plus the
  // domain; since `e` only grows, tables never depend on each other cyclically.
  std::size_t ms(const TypeSet& e, const Type& t) {
    if (t.is_arrow()) {
      TypeSet e2 = e;
      e2.insert(t.domain());
      return add(1, ms(e2, t.codomain()));
    }
    auto& table = table_for(e);
    auto it = table.find(t);
    return it == table.end() ? kInf : it->second;
  }

  std::map<Type, std::size_t>& table_for(const TypeSet& e) {
    if (auto it = tables_.find(e); it != tables_.end()) return it->second;
    auto& table = tables_[e];
    for (const auto& t : closure_)
      if (t.is_data()) table[t] = kInf;
    for (const auto& t : e)
      if (t.is_data()) table.emplace(t, kInf);
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& [d, best] : table) {
        std::size_t cand = kInf;
        for (const auto& f : sig_->funs()) {
          if (f.out_type != d) continue;
          std::size_t c = 1;
          for (const auto& a : f.arg_types) c = add(c, ms(e, a));
          cand = std::min(cand, c);
        }
        for (const auto& vt : e) {
          Type cur = vt;
          std::size_t c = 1;
          while (true) {
            if (cur == d) cand = std::min(cand, c);
            if (!cur.is_arrow()) break;
            c = add(c + 1, ms(e, cur.domain()));
            cur = cur.codomain();
          }
        }
        if (cand < best) {
          best = cand;
          changed = true;
        }
      }
    }
    return table;
  }

  std::string fresh_name(const Scope& scope) {
    for (std::size_t k = 1;; ++k) {
      std::string n = "v" + std::to_string(k);
      bool used = false;
      for (const auto& [name, _] : scope) used = used || name == n;
      for (const auto& f : sig_->funs()) used = used || f.name == n;
      if (!used) return n;
    }
  }

  std::vector<Option> options(const Scope& scope, const Type& tau, std::size_t budget) {
    const TypeSet e = scope_types(scope);
    std::vector<Option> out;
    auto offer = [&](Option o) {
      if (o.min <= budget && o.weight > 0) out.push_back(std::move(o));
    };
    if (tau.is_arrow()) {
      TypeSet e2 = e;
      e2.insert(tau.domain());
      offer({Option::Lambda, 1.0, {}, false, {}, add(1, ms(e2, tau.codomain()))});
      offer({Option::Eta, cfg_.eta_weight, {}, false, {}, add(3, ms(e, tau))});
    }
    for (const auto& f : sig_->funs()) {
      if (f.out_type != tau) continue;
      std::size_t c = 1;
      for (const auto& a : f.arg_types) c = add(c, ms(e, a));
      offer({Option::Head, 1.0, f.name, false, f.arg_types, c});
    }
    // Innermost binding of each name wins.
    std::set<std::string> shadowed;
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (!shadowed.insert(it->first).second) continue;
      Type cur = it->second;
      std::vector<Type> parts;
      std::size_t c = 1;
      while (true) {
        if (cur == tau) offer({Option::Head, 1.0, it->first, true, parts, c});
        if (!cur.is_arrow()) break;
        parts.push_back(cur.domain());
        c = add(c + 1, ms(e, cur.domain()));
        cur = cur.codomain();
      }
    }
    if (tau.is_data() && cfg_.redex_weight > 0) {
      std::vector<Type> binders;
      for (const auto& a : closure_) {
        TypeSet e2 = e;
        e2.insert(a);
        const std::size_t c = add(2, add(ms(e2, tau), ms(e, a)));
        if (c <= budget) binders.push_back(a);
      }
      if (!binders.empty()) {
        const Type& a = binders[below(binders.size())];
        TypeSet e2 = e;
        e2.insert(a);
        offer({Option::Redex, cfg_.redex_weight, {}, false, {a}, add(2, add(ms(e2, tau), ms(e, a)))});
      }
    }
    return out;
  }

  // Splits `extra` spare nodes randomly over `n` parts.
  std::vector<std::size_t> split(std::size_t extra, std::size_t n) {
    std::vector<std::size_t> out(n, 0);
    for (std::size_t i = 0; i < n && extra > 0; ++i) {
      const std::size_t share = i + 1 == n ? below(extra + 1) : below(extra / (n - i) * 2 + 1);
      out[i] = std::min(share, extra);
      extra -= out[i];
    }
    return out;
  }

  Term gen(Scope& scope, const Type& tau, std::size_t budget) {
    const auto opts = options(scope, tau, budget);
    if (opts.empty())
      throw GenError("no term of type " + tau.str() + " within size " + std::to_string(budget));
    double total = 0;
    for (const auto& o : opts) total += o.weight;
    double pick = unit() * total;
    std::size_t k = 0;
    while (k + 1 < opts.size() && pick >= opts[k].weight) pick -= opts[k++].weight;
    const Option& o = opts[k];
    const std::size_t extra = budget - o.min;
    const TypeSet e = scope_types(scope);

    switch (o.kind) {
      case Option::Lambda: {
        const std::string x = fresh_name(scope);
        scope.emplace_back(x, tau.domain());
        Term body = gen(scope, tau.codomain(), budget - 1);
        scope.pop_back();
        return Term::abs(x, tau.domain(), std::move(body));
      }
      case Option::Eta: {
        Term v = gen(scope, tau, budget - 3);
        const std::string x = fresh_name(scope);
        return Term::abs(x, tau.domain(), Term::app(std::move(v), Term::var(x, tau.domain())));
      }
      case Option::Redex: {
        const Type& a = o.parts[0];
        TypeSet e2 = e;
        e2.insert(a);
        const auto shares = split(extra, 2);
        const std::string x = fresh_name(scope);
        scope.emplace_back(x, a);
        Term body = gen(scope, tau, ms(e2, tau) + shares[0]);
        scope.pop_back();
        Term arg = gen(scope, a, ms(e, a) + shares[1]);
        return Term::app(Term::abs(x, a, std::move(body)), std::move(arg));
      }
      case Option::Head: {
        const auto shares = split(extra, o.parts.size());
        std::vector<Term> args;
        for (std::size_t i = 0; i < o.parts.size(); ++i)
          args.push_back(gen(scope, o.parts[i], ms(e, o.parts[i]) + shares[i]));
        if (!o.is_var) return Term::fun(sig_->fun(o.head), std::move(args));
        Type vt;
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
          if (it->first == o.head) {
            vt = it->second;
            break;
          }
        return Term::apply(Term::var(o.head, vt), args);
      }
    }
    throw GenError("unreachable");
  }

  const Signature* sig_;
  GenConfig cfg_;
  std::mt19937_64 rng_;
  std::set<Type> closure_;
  std::map<TypeSet, std::map<Type, std::size_t>> tables_;
};

}  // namespace horpo::harness
