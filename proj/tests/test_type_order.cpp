#include <gtest/gtest.h>

#include <vector>

#include "horpo/ordering.hpp"
#include "horpo/type_order.hpp"
#include "support.hpp"

using namespace horpo;
using namespace horpo::testing;

namespace {

TypeOrder brouwer_order() { return TypeOrder({{"Nat", 0}, {"Ord", 0}, {"A", 0}}, SortOrder{{{"Nat", "Ord"}}, {}}); }

// All types over `sorts` with at most `depth` nested arrows.
std::vector<Type> types_upto(const std::vector<Type>& sorts, int depth) {
  std::vector<Type> out = sorts;
  for (int d = 0; d < depth; ++d) {
    std::vector<Type> next = out;
    for (const auto& a : out)
      for (const auto& b : out) next.push_back(arr(a, b));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST(CmpTypes, Examples) {
  const TypeOrder o = brouwer_order();
  EXPECT_EQ(cmp_types(o, ty("Nat"), ty("Ord")), TypeCompare::LT);
  EXPECT_EQ(cmp_types(o, ty("Ord"), ty("Nat")), TypeCompare::GT);
  EXPECT_EQ(cmp_types(o, ty("A"), ty("A")), TypeCompare::EQ);
  EXPECT_EQ(cmp_types(o, arr(ty("Nat"), ty("Ord")), arr(ty("Nat"), ty("Ord"))), TypeCompare::EQ);
  EXPECT_EQ(cmp_types(o, arr(ty("Nat"), ty("Ord")), ty("Ord")), TypeCompare::GT);
  EXPECT_EQ(cmp_types(o, ty("A"), ty("Nat")), TypeCompare::INCOMP);
}

TEST(CmpTypes, DataNeverAboveArrow) {
  const TypeOrder o = brouwer_order();
  for (const auto& a : types_upto({ty("Nat"), ty("Ord"), ty("A")}, 1))
    for (const auto& b : types_upto({ty("Nat"), ty("Ord"), ty("A")}, 1))
      if (a.is_data() && b.is_arrow()) EXPECT_FALSE(o.gt(a, b)) << a << " " << b;
}

TEST(CmpTypes, AntisymmetricAndTransitive) {
  const TypeOrder o = brouwer_order();
  const auto ts = types_upto({ty("Nat"), ty("Ord"), ty("A")}, 2);
  ASSERT_GT(ts.size(), 100u);
  for (const auto& a : ts)
    for (const auto& b : ts) {
      const auto ab = o.compare(a, b), ba = o.compare(b, a);
      EXPECT_EQ(ab == TypeCompare::GT, ba == TypeCompare::LT);
      EXPECT_EQ(ab == TypeCompare::EQ, ba == TypeCompare::EQ);
    }
  // Transitivity of the strict part by brute force over a smaller set.
  const auto small = types_upto({ty("Nat"), ty("Ord")}, 2);
  for (const auto& a : small)
    for (const auto& b : small) {
      if (!o.gt(a, b)) continue;
      for (const auto& c : small)
        if (o.gt(b, c)) EXPECT_TRUE(o.gt(a, c)) << a << " > " << b << " > " << c;
    }
}

TEST(CmpTypes, EquivalentSortsAreCongruent) {
  const TypeOrder o({{"P", 0}, {"Q", 0}, {"R", 0}}, SortOrder{{{"R", "P"}}, {{"P", "Q"}}});
  EXPECT_EQ(o.compare(ty("P"), ty("Q")), TypeCompare::EQ);
  EXPECT_EQ(o.compare(arr(ty("P"), ty("R")), arr(ty("Q"), ty("R"))), TypeCompare::EQ);
  EXPECT_EQ(o.compare(ty("Q"), ty("R")), TypeCompare::GT);
}

TEST(ValidateAxioms, BrouwerUniverseIsValid) {
  const Problem p = load("brouwer.horpo");
  const Ordering ord = p.ordering();
  EXPECT_TRUE(validate_axioms(ord.types, ord.universe).empty());
}

TEST(ValidateAxioms, TwoCycleIsNotWellFounded) {
  const TypeOrder o({{"Nat", 0}, {"Ord", 0}}, SortOrder{{{"Nat", "Ord"}, {"Ord", "Nat"}}, {}});
  const auto vs = validate_axioms(o, TypeUniverse{ty("Nat"), ty("Ord")});
  ASSERT_FALSE(vs.empty());
  EXPECT_EQ(vs.front().axiom, Axiom::WellFoundedness);
}

TEST(ValidateAxioms, EmptyUniverse) {
  EXPECT_TRUE(validate_axioms(brouwer_order(), TypeUniverse{}).empty());
}

TEST(ValidateAxioms, EveryValidCorpusUniverse) {
  for (const char* f : kCorpusFiles) {
    const Problem p = load(f);
    const Ordering ord = p.ordering();
    const bool valid = validate_axioms(ord.types, ord.universe).empty();
    EXPECT_EQ(valid, std::string(f) != "cyclic_sorts.horpo") << f;
    if (!valid) continue;
    for (const auto& a : ord.universe)
      for (const auto& b : ord.universe) {
        if (ord.types.eq(a, b)) EXPECT_EQ(a.is_data(), b.is_data()) << f << ": " << a << " = " << b;
        // The strict part is acyclic on the universe: no 2-cycles, and
        // transitivity then rules out longer ones.
        EXPECT_FALSE(ord.types.gt(a, b) && ord.types.gt(b, a)) << f;
      }
    if (!ord.universe.empty()) EXPECT_FALSE(ord.acc.min_types().empty()) << f;
  }
}

TEST(Polarity, Examples) {
  const TypeOrder o = brouwer_order();
  EXPECT_TRUE(occurs_positively(ty("Ord"), arr(ty("Nat"), ty("Ord")), o));
  EXPECT_TRUE(occurs_positively(ty("Nat"), ty("Nat"), o));
  EXPECT_FALSE(occurs_positively(ty("A"), arr(arr(ty("Nat"), ty("A")), ty("A")), o));
  EXPECT_FALSE(occurs_negatively(ty("A"), ty("A"), o));
  EXPECT_TRUE(occurs_negatively(ty("A"), ty("Nat"), o));
  EXPECT_THROW(occurs_positively(arr(ty("A"), ty("A")), ty("A"), o), TypeError);
}

TEST(Polarity, DataTypesHaveOneFalsePolarityAtMost) {
  const TypeOrder o = brouwer_order();
  for (const auto& s : {ty("Nat"), ty("Ord"), ty("A")})
    for (const auto& t : {ty("Nat"), ty("Ord"), ty("A")})
      EXPECT_TRUE(occurs_positively(s, t, o) || occurs_negatively(s, t, o));
}

TEST(MinimalTypes, Examples) {
  const Problem p = load("brouwer.horpo");
  const Ordering ord = p.ordering();
  EXPECT_EQ(minimal_types(ord.types, ord.universe), (std::set<Type>{ty("Nat"), ty("A")}));
  const TypeOrder o = brouwer_order();
  EXPECT_EQ(minimal_types(o, TypeUniverse{ty("Nat")}), (std::set<Type>{ty("Nat")}));
  EXPECT_EQ(minimal_types(o, TypeUniverse{ty("Nat"), arr(ty("Nat"), ty("Nat"))}), (std::set<Type>{ty("Nat")}));
}
