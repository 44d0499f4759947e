#pragma once

#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "horpo/accessibility.hpp"
#include "horpo/term.hpp"
#include "horpo/type_order.hpp"

namespace horpo {

/// Name of the application operator in precedences and statuses.
inline constexpr std::string_view kApp = "@";

enum class Status { Mul, Lex };

inline std::string_view to_string(Status s) { return s == Status::Mul ? "mul" : "lex"; }

using StatusMap = std::map<std::string, Status>;

/// Quasi-order on function symbols plus `@`. Every declared symbol is
/// implicitly above `@`.
class Precedence {
 public:
  using Pairs = std::vector<std::pair<std::string, std::string>>;

  Precedence() = default;

  Precedence(const Signature& sig, Pairs greater, Pairs equal)
      : greater_(std::move(greater)), equal_(std::move(equal)) {
    names_.emplace_back(kApp);
    for (const auto& f : sig.funs()) names_.push_back(f.name);
    for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
    const std::size_t n = names_.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [a, b] : equal_) parent[find(id(a))] = find(id(b));
    class_.resize(n);
    for (std::size_t i = 0; i < n; ++i) class_[i] = find(i);
    above_.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 1; i < n; ++i) above_[class_[i]][class_[0]] = true;
    for (const auto& [a, b] : greater_) above_[class_[id(a)]][class_[id(b)]] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (above_[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (above_[k][j]) above_[i][j] = true;
  }

  bool gt(std::string_view f, std::string_view g) const {
    return above_[class_[id(f)]][class_[id(g)]];
  }
  bool eq(std::string_view f, std::string_view g) const {
    return class_[id(f)] == class_[id(g)];
  }

  const Pairs& greater_pairs() const { return greater_; }
  const Pairs& equal_pairs() const { return equal_; }

  /// Symbols strictly above themselves.
  std::vector<std::string> cyclic_symbols() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (above_[class_[i]][class_[i]]) out.push_back(names_[i]);
    return out;
  }

  bool declared(std::string_view f) const { return index_.count(std::string(f)) != 0; }

 private:
  std::size_t id(std::string_view f) const {
    auto it = index_.find(std::string(f));
    if (it == index_.end()) throw Error("unknown symbol '" + std::string(f) + "' in precedence");
    return it->second;
  }

  Pairs greater_, equal_;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::size_t> class_;
  std::vector<std::vector<bool>> above_;
};

/// Everything the ordering needs for one problem: declarations, the type
/// ordering, precedence, statuses, the type universe and accessibility.
struct Ordering {
  Signature sig;
  TypeOrder types;
  Precedence prec;
  StatusMap status;
  TypeUniverse universe;
  Accessibility acc;

  Ordering() = default;

  Ordering(Signature s, const SortOrder& sort_order, Precedence::Pairs greater,
           Precedence::Pairs equal, StatusMap st, TypeUniverse u)
      : sig(std::move(s)),
        types(sig.sorts(), sort_order),
        prec(sig, std::move(greater), std::move(equal)),
        status(std::move(st)),
        universe(std::move(u)) {
    for (const auto& f : sig.funs()) {
      universe.add(f.out_type);
      for (const auto& a : f.arg_types) universe.add(a);
    }
    acc = Accessibility(sig, types, minimal_types(types, universe));
  }

  Status status_of(std::string_view f) const {
    auto it = status.find(std::string(f));
    return it == status.end() ? Status::Mul : it->second;
  }

  /// Problems with the precedence and statuses (the type ordering is checked
  /// separately by `validate_axioms`).
  std::vector<std::string> parameter_errors() const {
    std::vector<std::string> out;
    for (const auto& f : prec.cyclic_symbols())
      out.push_back("precedence is not well-founded: " + f + " is strictly above itself");
    if (status_of(kApp) != Status::Mul) out.push_back("@ must have multiset status");
    const auto& funs = sig.funs();
    for (std::size_t i = 0; i < funs.size(); ++i)
      for (std::size_t j = i + 1; j < funs.size(); ++j) {
        if (!prec.eq(funs[i].name, funs[j].name)) continue;
        if (funs[i].arity() != funs[j].arity())
          out.push_back("equivalent symbols " + funs[i].name + " and " + funs[j].name +
                        " differ in arity");
        if (status_of(funs[i].name) != status_of(funs[j].name))
          out.push_back("equivalent symbols " + funs[i].name + " and " + funs[j].name +
                        " differ in status");
      }
    for (const auto& f : funs)
      if (prec.eq(f.name, kApp)) out.push_back(f.name + " must be above @");
    return out;
  }

  /// Whether `a` and `b` are symbols of F ∪ {@} related by `>_F`.
  bool prec_gt(std::string_view a, std::string_view b) const { return prec.gt(a, b); }
};

}  // namespace horpo
