#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "horpo/term.hpp"

namespace horpo {

/// Variables freed by stripping right-hand-side abstractions, with types.
using BoundVarSet = std::map<std::string, Type>;

enum class GoalKind { GT, GE, GT_TYPE, GE_TYPE, ACC_GE_TYPE, ACC_GT_TYPE };

enum class CaseLabel {
  C1a, C1b, C1c, C2a, C2b, C2c, C3a, C3b, C3c, C4a, C4b,
  Refl, TypeCheck, MulExt, LexExt, AccApply
};

inline std::string_view to_string(GoalKind k) {
  switch (k) {
    case GoalKind::GT: return "gt";
    case GoalKind::GE: return "ge";
    case GoalKind::GT_TYPE: return "gt_type";
    case GoalKind::GE_TYPE: return "ge_type";
    case GoalKind::ACC_GE_TYPE: return "acc_ge_type";
    case GoalKind::ACC_GT_TYPE: return "acc_gt_type";
  }
  return "?";
}

inline std::string_view to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::C1a: return "1a";
    case CaseLabel::C1b: return "1b";
    case CaseLabel::C1c: return "1c";
    case CaseLabel::C2a: return "2a";
    case CaseLabel::C2b: return "2b";
    case CaseLabel::C2c: return "2c";
    case CaseLabel::C3a: return "3a";
    case CaseLabel::C3b: return "3b";
    case CaseLabel::C3c: return "3c";
    case CaseLabel::C4a: return "4a";
    case CaseLabel::C4b: return "4b";
    case CaseLabel::Refl: return "refl";
    case CaseLabel::TypeCheck: return "typeCheck";
    case CaseLabel::MulExt: return "mulExt";
    case CaseLabel::LexExt: return "lexExt";
    case CaseLabel::AccApply: return "accApply";
  }
  return "?";
}

inline bool is_ordering_case(CaseLabel c) {
  return c <= CaseLabel::C4b;
}

struct ProofTrace;
using TracePtr = std::shared_ptr<const ProofTrace>;

/// One node of a derivation. Ordering-case nodes prove `lhs > rhs` under
/// `bound`; `refl` proves `lhs ≥ rhs` by alpha-equivalence; extension nodes
/// compare `lhs_args` with `rhs_args`; `accApply` nodes prove the composite
/// accessibility-then-application relation. `aux` carries the choices made
/// (argument index, accessible subterm, applied variables, fresh names, type
/// checks) in a fixed order.
struct ProofTrace {
  CaseLabel label = CaseLabel::Refl;
  GoalKind kind = GoalKind::GT;
  BoundVarSet bound;
  Term lhs, rhs;
  std::vector<Term> lhs_args, rhs_args;
  std::vector<std::pair<std::string, std::string>> aux;
  std::vector<TracePtr> children;

  std::string aux_value(std::string_view key) const {
    for (const auto& [k, v] : aux)
      if (k == key) return v;
    return {};
  }
};

/// Number of nodes in the trace tree.
inline std::size_t trace_size(const ProofTrace& t) {
  std::size_t n = 1;
  for (const auto& c : t.children) n += trace_size(*c);
  return n;
}

}  // namespace horpo
