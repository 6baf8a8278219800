#include <gtest/gtest.h>

#include "limitlearn/language.h"
#include "limitlearn/text.h"

namespace limitlearn {
namespace {

// Membership by brute force on a window; the shapes under test are periodic
// with small periods, so agreement up to 200 is a strong check.
constexpr Nat kWindow = 200;

SetShape random_shape(DeterministicRng& rng) {
  NatSet pts;
  const Nat n = rng.below(4);
  while (pts.size() < n) pts.insert(rng.below(10));
  switch (rng.below(5)) {
    case 0:
      return SetShape::finite(pts);
    case 1:
      return SetShape::cofinite(pts);
    case 2:
      return SetShape::evens().unite(SetShape::finite(pts));
    case 3:
      return SetShape::residue_class(rng.below(3), 3).minus(SetShape::finite(pts));
    default:
      return SetShape::naturals().minus(SetShape::evens()).intersect(SetShape::cofinite(pts));
  }
}

TEST(SetShape, Basics) {
  EXPECT_TRUE(SetShape::empty().is_finite());
  EXPECT_FALSE(SetShape::evens().is_finite());
  EXPECT_TRUE(SetShape::evens().contains(4));
  EXPECT_FALSE(SetShape::evens().contains(5));
  EXPECT_EQ(SetShape::below(3).finite_elements(), (NatSet{0, 1, 2}));
  EXPECT_EQ(SetShape::cofinite({2}).elements_upto(4), (NatSet{0, 1, 3, 4}));
  EXPECT_EQ(SetShape::residue_class(1, 3).elements_upto(10), (NatSet{1, 4, 7, 10}));
}

TEST(SetShape, CanonicalFormMakesEqualityExtensional) {
  const SetShape a = SetShape::evens().unite(SetShape::finite({1}));
  const SetShape b = SetShape::finite({0, 1}).unite(SetShape::residue_class(0, 2));
  EXPECT_EQ(a, b);
  EXPECT_EQ(SetShape::residue_class(0, 4).unite(SetShape::residue_class(2, 4)),
            SetShape::evens());
  EXPECT_EQ(SetShape::cofinite({}), SetShape::naturals());
}

TEST(SetShape, OperationsAgreeWithPointwiseEvaluation) {
  DeterministicRng rng(21);
  for (int i = 0; i < 200; ++i) {
    const SetShape a = random_shape(rng);
    const SetShape b = random_shape(rng);
    const SetShape u = a.unite(b), n = a.intersect(b), d = a.minus(b), c = a.complement();
    bool sub = true;
    for (Nat x = 0; x < kWindow; ++x) {
      EXPECT_EQ(u.contains(x), a.contains(x) || b.contains(x));
      EXPECT_EQ(n.contains(x), a.contains(x) && b.contains(x));
      EXPECT_EQ(d.contains(x), a.contains(x) && !b.contains(x));
      EXPECT_EQ(c.contains(x), !a.contains(x));
      if (a.contains(x) && !b.contains(x)) sub = false;
    }
    EXPECT_EQ(a.subset_of(b), sub) << a.to_string() << " " << b.to_string();
  }
}

TEST(SetShape, Relations) {
  EXPECT_TRUE(SetShape::finite({0, 2}).proper_subset_of(SetShape::evens()));
  EXPECT_FALSE(SetShape::evens().proper_subset_of(SetShape::evens()));
  EXPECT_TRUE(SetShape::cofinite({3}).finite_variant_of(SetShape::naturals()));
  EXPECT_FALSE(SetShape::evens().finite_variant_of(SetShape::naturals()));
  EXPECT_EQ(SetShape::finite({0, 1, 3}).least_absent(), 2u);
  EXPECT_FALSE(SetShape::naturals().least_absent().has_value());
}

TEST(SetShape, ToString) {
  EXPECT_EQ(SetShape::finite({0, 2}).to_string(), "{0,2}");
  EXPECT_EQ(SetShape::naturals().to_string(), "N");
  EXPECT_EQ(SetShape::evens().to_string(), "2N");
  EXPECT_EQ(SetShape::cofinite({3}).to_string(), "N\\{3}");
}

TEST(SetShape, FiniteElementsRequiresFinite) {
  EXPECT_THROW(SetShape::evens().finite_elements(), PreconditionError);
}

TEST(LanguageDescr, Shapes) {
  EXPECT_EQ(*LanguageDescr::finite({1, 2}).shape(), SetShape::finite({1, 2}));
  EXPECT_EQ(*LanguageDescr::cofinite({0}).shape(), SetShape::cofinite({0}));
  EXPECT_EQ(*LanguageDescr::evens().shape(), SetShape::evens());
  EXPECT_EQ(*LanguageDescr::all_naturals().shape(), SetShape::naturals());
  EXPECT_FALSE(LanguageDescr::ce(ProgramCode{4}).shape().has_value());
  EXPECT_FALSE(LanguageDescr::ce(ProgramCode{4}).decidable());
}

}  // namespace
}  // namespace limitlearn
