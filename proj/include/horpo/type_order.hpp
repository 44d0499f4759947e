#pragma once

#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "horpo/term.hpp"
#include "horpo/type.hpp"

namespace horpo {

/// User-supplied generator of the type ordering: strict pairs `lo < hi` and
/// equivalences between sort names.
struct SortOrder {
  std::vector<std::pair<std::string, std::string>> less;   // (lo, hi)
  std::vector<std::pair<std::string, std::string>> equiv;

  friend bool operator==(const SortOrder&, const SortOrder&) = default;
};

enum class TypeCompare { GT, EQ, LT, INCOMP };

inline std::string_view to_string(TypeCompare c) {
  switch (c) {
    case TypeCompare::GT: return "GT";
    case TypeCompare::EQ: return "EQ";
    case TypeCompare::LT: return "LT";
    case TypeCompare::INCOMP: return "INCOMP";
  }
  return "?";
}

/// Finite carrier of types, closed under type subterms.
class TypeUniverse {
 public:
  TypeUniverse() = default;
  TypeUniverse(std::initializer_list<Type> ts) {
    for (const auto& t : ts) add(t);
  }

  void add(const Type& t) {
    if (!types_.insert(t).second) return;
    for (const auto& a : t.args()) add(a);
  }

  void add_term(const Term& t) {
    if (t.typed()) add(t.type());
    if (t.is_abs()) add(t.binder_type());
    for (const auto& c : t.children()) add_term(c);
  }

  bool contains(const Type& t) const { return types_.count(t) != 0; }
  const std::set<Type>& types() const { return types_; }
  bool empty() const { return types_.empty(); }
  std::size_t size() const { return types_.size(); }
  auto begin() const { return types_.begin(); }
  auto end() const { return types_.end(); }

 private:
  std::set<Type> types_;
};

/// The canonical type ordering generated by a sort order: data types are
/// compared by head sort (equivalent only when arguments are pairwise
/// equivalent), arrows componentwise for equivalence. An arrow `d -> c` is
/// above `rho` when `d <= c` and `c >= rho`, or when `rho` has an equivalent
/// domain and a smaller codomain. A data type is never above an arrow.
class TypeOrder {
 public:
  TypeOrder() = default;

  TypeOrder(const std::vector<SortDecl>& sorts, SortOrder order)
      : order_(std::move(order)) {
    for (const auto& s : sorts) index_.emplace(s.name, names_.size()), names_.push_back(s.name);
    const std::size_t n = names_.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [a, b] : order_.equiv) parent[find(id(a))] = find(id(b));
    class_.resize(n);
    for (std::size_t i = 0; i < n; ++i) class_[i] = find(i);
    above_.assign(n, std::vector<bool>(n, false));
    for (const auto& [lo, hi] : order_.less) above_[class_[id(hi)]][class_[id(lo)]] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (above_[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (above_[k][j]) above_[i][j] = true;
  }

  const SortOrder& sort_order() const { return order_; }
  const std::vector<std::string>& sort_names() const { return names_; }

  bool sorts_equiv(std::string_view a, std::string_view b) const {
    return class_[id(a)] == class_[id(b)];
  }
  bool sort_gt(std::string_view a, std::string_view b) const {
    return above_[class_[id(a)]][class_[id(b)]];
  }

  bool eq(const Type& a, const Type& b) const {
    if (a.kind() != b.kind()) return false;
    if (a.is_data()) {
      if (!sorts_equiv(a.sort(), b.sort()) || a.args().size() != b.args().size())
        return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!eq(a.args()[i], b.args()[i])) return false;
      return true;
    }
    return eq(a.domain(), b.domain()) && eq(a.codomain(), b.codomain());
  }

  bool gt(const Type& a, const Type& b) const {
    if (a.is_data()) return b.is_data() && sort_gt(a.sort(), b.sort());
    if (ge(a.codomain(), b) && ge(a.codomain(), a.domain())) return true;
    return b.is_arrow() && eq(a.domain(), b.domain()) && gt(a.codomain(), b.codomain());
  }

  bool ge(const Type& a, const Type& b) const { return eq(a, b) || gt(a, b); }

  TypeCompare compare(const Type& a, const Type& b) const {
    if (eq(a, b)) return TypeCompare::EQ;
    if (gt(a, b)) return TypeCompare::GT;
    if (gt(b, a)) return TypeCompare::LT;
    return TypeCompare::INCOMP;
  }

  /// Equivalence classes whose strict part reaches themselves.
  std::vector<std::string> cyclic_sorts() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (above_[class_[i]][class_[i]]) out.push_back(names_[i]);
    return out;
  }

  bool declared(std::string_view sort) const {
    return index_.count(std::string(sort)) != 0;
  }

 private:
  std::size_t id(std::string_view s) const {
    auto it = index_.find(std::string(s));
    if (it == index_.end()) throw TypeError("undeclared sort '" + std::string(s) + "'");
    return it->second;
  }

  SortOrder order_;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::size_t> class_;
  std::vector<std::vector<bool>> above_;  // class -> class, transitively closed
};

inline TypeCompare cmp_types(const TypeOrder& order, const Type& a, const Type& b) {
  return order.compare(a, b);
}

// ---------------------------------------------------------------------------
// Axiom validation

enum class Axiom { WellFoundedness, ArrowPreservation, ArrowDecreasingness, ArrowMonotonicity };

inline std::string_view to_string(Axiom a) {
  switch (a) {
    case Axiom::WellFoundedness: return "well-foundedness";
    case Axiom::ArrowPreservation: return "arrow preservation";
    case Axiom::ArrowDecreasingness: return "arrow decreasingness";
    case Axiom::ArrowMonotonicity: return "arrow monotonicity";
  }
  return "?";
}

struct AxiomViolation {
  Axiom axiom;
  std::string message;
  friend bool operator==(const AxiomViolation&, const AxiomViolation&) = default;
};

/// Checks the four type-ordering axioms, quantified over `universe`.
/// An empty result means all hold.
inline std::vector<AxiomViolation> validate_axioms(const TypeOrder& order,
                                                   const TypeUniverse& universe) {
  std::vector<AxiomViolation> out;
  for (const auto& s : order.cyclic_sorts())
    out.push_back({Axiom::WellFoundedness,
                   "sort order is not well-founded: " + s + " is strictly above itself"});

  const std::vector<Type> u(universe.begin(), universe.end());

  // The strict part restricted to the universe must be acyclic as well.
  {
    const std::size_t n = u.size();
    std::vector<int> state(n, 0);
    bool cyclic = false;
    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
      state[i] = 1;
      for (std::size_t j = 0; j < n && !cyclic; ++j) {
        if (!order.gt(u[i], u[j])) continue;
        if (state[j] == 1) cyclic = true;
        else if (state[j] == 0) dfs(j);
      }
      state[i] = 2;
    };
    for (std::size_t i = 0; i < n && !cyclic; ++i)
      if (state[i] == 0) dfs(i);
    if (cyclic && out.empty())
      out.push_back({Axiom::WellFoundedness, "strict type ordering has a cycle on the universe"});
  }

  for (const auto& a : u) {
    if (!a.is_arrow()) continue;
    for (const auto& b : u) {
      const bool structural = b.is_arrow() && order.eq(a.domain(), b.domain()) &&
                              order.eq(a.codomain(), b.codomain());
      if (order.eq(a, b) != structural)
        out.push_back({Axiom::ArrowPreservation, a.str() + " vs " + b.str()});
      if (order.gt(a, b)) {
        const bool ok = order.ge(a.codomain(), b) ||
                        (b.is_arrow() && order.eq(a.domain(), b.domain()) &&
                         order.gt(a.codomain(), b.codomain()));
        if (!ok)
          out.push_back({Axiom::ArrowDecreasingness, a.str() + " > " + b.str()});
      }
    }
  }

  for (const auto& hi : u) {
    for (const auto& lo : u) {
      if (!order.ge(hi, lo)) continue;
      for (const auto& alpha : u) {
        const Type l1 = Type::arrow(alpha, hi), r1 = Type::arrow(alpha, lo);
        if (universe.contains(l1) && universe.contains(r1) && !order.ge(l1, r1))
          out.push_back({Axiom::ArrowMonotonicity,
                         hi.str() + " >= " + lo.str() + " but not " + l1.str() + " >= " + r1.str()});
        const Type l2 = Type::arrow(hi, alpha), r2 = Type::arrow(lo, alpha);
        if (universe.contains(l2) && universe.contains(r2) && !order.ge(l2, r2))
          out.push_back({Axiom::ArrowMonotonicity,
                         hi.str() + " >= " + lo.str() + " but not " + l2.str() + " >= " + r2.str()});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polarity

inline bool occurs_negatively(const Type& sigma, const Type& tau, const TypeOrder& order);

/// Whether data type `sigma` occurs only positively in `tau`.
inline bool occurs_positively(const Type& sigma, const Type& tau, const TypeOrder& order) {
  if (!sigma.is_data()) throw TypeError("polarity is defined for data types only: " + sigma.str());
  if (tau.is_data()) return true;
  return occurs_positively(sigma, tau.codomain(), order) &&
         occurs_negatively(sigma, tau.domain(), order);
}

inline bool occurs_negatively(const Type& sigma, const Type& tau, const TypeOrder& order) {
  if (!sigma.is_data()) throw TypeError("polarity is defined for data types only: " + sigma.str());
  if (tau.is_data()) return !order.eq(sigma, tau);
  return occurs_negatively(sigma, tau.codomain(), order) &&
         occurs_positively(sigma, tau.domain(), order);
}

/// Types of `universe` with no strictly smaller element under the strict
/// type ordering united with the type-subterm relation.
inline std::set<Type> minimal_types(const TypeOrder& order, const TypeUniverse& universe) {
  std::set<Type> out;
  for (const auto& t : universe) {
    if (!t.args().empty()) continue;  // arrows and applied sorts have type subterms
    bool minimal = true;
    for (const auto& other : universe)
      if (order.gt(t, other)) {
        minimal = false;
        break;
      }
    if (minimal) out.insert(t);
  }
  return out;
}

}  // namespace horpo
