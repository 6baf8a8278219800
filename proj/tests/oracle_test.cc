#include <gtest/gtest.h>

#include "limitlearn/oracle.h"

namespace limitlearn {
namespace {

TEST(Tri, Logic) {
  EXPECT_EQ(tri_and(Tri::kTrue, Tri::kTrue), Tri::kTrue);
  EXPECT_EQ(tri_and(Tri::kFalse, Tri::kUnknown), Tri::kFalse);
  EXPECT_EQ(tri_and(Tri::kTrue, Tri::kUnknown), Tri::kUnknown);
  EXPECT_EQ(tri_not(Tri::kUnknown), Tri::kUnknown);
  EXPECT_EQ(tri_not(Tri::kFalse), Tri::kTrue);
}

TEST(LanguageOracle, DescribedCodesAreExact) {
  Registry reg;
  LanguageOracle oracle(reg, 64, 50, false);
  const ProgramCode a = reg.ind({0, 1});
  const ProgramCode b = reg.ind({0});
  EXPECT_EQ(oracle.proper_subset(b, a), Tri::kTrue);
  EXPECT_EQ(oracle.proper_subset(a, b), Tri::kFalse);
  EXPECT_EQ(oracle.subset(a, reg.naturals()), Tri::kTrue);
  EXPECT_EQ(oracle.equal(reg.cofinite(3), reg.remove_element(reg.naturals(), 3)), Tri::kTrue);
  EXPECT_EQ(oracle.is_finite(reg.evens()), Tri::kFalse);
  EXPECT_EQ(oracle.is_finite(a), Tri::kTrue);
  EXPECT_EQ(oracle.resolve(a).source, Resolution::Source::kDescribed);
  EXPECT_FALSE(oracle.used_bounded());
}

TEST(LanguageOracle, ExactBeyondUniverse) {
  Registry reg;
  LanguageOracle oracle(reg, 8, 20, false);
  // The two differ only at 100, far above the universe.
  EXPECT_EQ(oracle.equal(reg.naturals(), reg.cofinite(100)), Tri::kFalse);
}

TEST(LanguageOracle, DeclaredDescriptorsWin) {
  Registry reg;
  const ProgramCode e = reg.succ(reg.argument());
  LanguageOracle oracle(reg, 64, 50, false);
  EXPECT_THROW(oracle.resolve(e), PreconditionError);
  LanguageOracle declared(reg, 64, 50, false);
  declared.declare(e, LanguageDescr::all_naturals());
  EXPECT_EQ(declared.resolve(e).source, Resolution::Source::kDeclared);
  EXPECT_EQ(declared.equal(e, reg.naturals()), Tri::kTrue);
}

TEST(LanguageOracle, EnumerationFallbackIsFlagged) {
  Registry reg;
  const ProgramCode e = reg.succ(reg.argument());  // total, so W = ℕ
  LanguageOracle oracle(reg, 16, 40, true);
  const Resolution r = oracle.resolve(e);
  EXPECT_EQ(r.source, Resolution::Source::kEnumerated);
  EXPECT_TRUE(r.bounded);
  EXPECT_EQ(oracle.equal(e, reg.naturals()), Tri::kTrue);
  EXPECT_TRUE(oracle.used_bounded());
  // Finiteness cannot be read off a window.
  EXPECT_EQ(oracle.is_finite(e), Tri::kUnknown);
}

TEST(LanguageOracle, TargetRelations) {
  Registry reg;
  LanguageOracle oracle(reg);
  const SetShape evens = SetShape::evens();
  EXPECT_EQ(oracle.equals_target(reg.evens(), evens), Tri::kTrue);
  EXPECT_EQ(oracle.within_target(reg.ind({0, 4}), evens), Tri::kTrue);
  EXPECT_EQ(oracle.within_target(reg.ind({1}), evens), Tri::kFalse);
  EXPECT_EQ(oracle.properly_contains_target(reg.cofinite(5), evens), Tri::kTrue);
  EXPECT_EQ(oracle.properly_contains_target(reg.evens(), evens), Tri::kFalse);
  EXPECT_EQ(oracle.contains_all(reg.ind({1, 2}), {1}), Tri::kTrue);
  EXPECT_EQ(oracle.contains_all(reg.ind({1, 2}), {1, 3}), Tri::kFalse);
}

TEST(LanguageOracle, SubsetOnTargetReportsWitness) {
  Registry reg;
  LanguageOracle oracle(reg);
  const SetShape target = SetShape::below(6);
  std::optional<Nat> lost;
  EXPECT_EQ(oracle.subset_on(reg.ind({0, 2, 9}), reg.ind({0, 1}), target, &lost), Tri::kFalse);
  EXPECT_EQ(lost, 2u);
  // 9 is outside the target and does not count.
  EXPECT_EQ(oracle.subset_on(reg.ind({0, 9}), reg.ind({0}), target), Tri::kTrue);
}

}  // namespace
}  // namespace limitlearn
