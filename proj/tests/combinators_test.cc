#include <atomic>

#include <gtest/gtest.h>

#include "limitlearn/classes.h"
#include "limitlearn/combinators.h"
#include "limitlearn/criteria.h"
#include "limitlearn/harness.h"
#include "support.h"

namespace limitlearn {
namespace {

SetShape language_of(const Registry& reg, Conjecture c) {
  EXPECT_TRUE(c.has_value());
  auto shape = reg.describe(*c, 200);
  EXPECT_TRUE(shape.has_value());
  return shape.value_or(SetShape::empty());
}

std::vector<TextSource> finite_texts(std::size_t per_set, std::size_t len, Nat seed) {
  std::vector<TextSource> out;
  for (const NatSet& l : testing::small_sets(5, 3)) {
    for (TextSource& t : sample_texts(LanguageDescr::finite(l), per_set, len, seed++)) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

TEST(Memoize, CallsOncePerSequence) {
  auto calls = std::make_shared<std::atomic<int>>(0);
  const Learner h = Learner::sequential("count", [calls](const Sequence& s) -> Conjecture {
    ++*calls;
    return ProgramCode{s.size()};
  });
  const Learner m = memoize(h);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(m(parse_sequence("1,2")), ProgramCode{2});
  EXPECT_EQ(m(Sequence{}), ProgramCode{0});
  EXPECT_EQ(calls->load(), 2);
}

class Totalize : public ::testing::Test {
 protected:
  Registry reg;
  ProgramCode e;

  void SetUp() override {
    Registry* r = &reg;
    // ind(content(σ)) after |σ|+1 steps; diverges once 5 appears.
    e = reg.host("partial", [r](const Value& x, Nat fuel) -> HostResult {
      auto seq = x.as_sequence();
      if (!seq || content(*seq).count(5)) return {std::nullopt, fuel};
      return {Value(r->ind(content(*seq)).id), seq->size() + 1};
    });
  }
};

TEST_F(Totalize, FallsBackOnDivergence) {
  const Transformed t = totalize(reg, e);
  EXPECT_EQ(t.learner(parse_sequence("5")), reg.ind({}));
  EXPECT_TRUE(t.anchor(parse_sequence("5")).empty());
  EXPECT_TRUE(t.learner.has(Learner::kTotal));
}

TEST_F(Totalize, AnchorGrowsSlowly) {
  const Transformed t = totalize(reg, e);
  Sequence s;
  std::size_t prev = 0;
  for (Nat n = 0; n < 50; ++n) {
    s.push_back(Elem::datum(n % 4));
    const std::size_t r = t.anchor(s).size();
    EXPECT_GE(r, prev);
    EXPECT_LE(r, s.size());
    prev = r;
  }
  EXPECT_EQ(prev, 49u);
}

TEST_F(Totalize, RejectsDivergenceOnEmptySequence) {
  EXPECT_THROW(totalize(reg, reg.diverge(), 100), PreconditionError);
}

TEST(StronglyLocking, ConstantLearnerKeepsEmptyAnchor) {
  const Learner h = Learner::sequential("const", [](const Sequence&) -> Conjecture {
    return ProgramCode{7};
  });
  const Transformed t = strongly_locking(h);
  const Sequence s = parse_sequence("1,2,3,#,4");
  EXPECT_TRUE(t.anchor(s).empty());
  EXPECT_EQ(t.learner(s), ProgramCode{7});
}

TEST(StronglyLocking, ConvergesOnFiniteSets) {
  Registry reg;
  LanguageOracle oracle(reg, 16);
  const Transformed t = strongly_locking(finite_sets_learner(reg));
  for (const TextSource& text : finite_texts(1, 16, 10)) {
    const auto p = run_interaction(Interaction::kG, t.learner, text, 16);
    EXPECT_TRUE(check(Restriction::kEx, p, text, oracle).holds()) << to_string(text.prefix(16));
    EXPECT_EQ(t.anchor(text.prefix(15)), t.anchor(text.prefix(16)));
  }
}

TEST(Syndec, NeverReturnsToACode) {
  Registry reg;
  const ProgramCode a = reg.ind({0}), b = reg.ind({0, 1});
  // a, b, a on the first three prefixes.
  const Learner h = Learner::sequential("aba", [a, b](const Sequence& s) -> Conjecture {
    return s.size() == 1 ? b : a;
  });
  const Transformed t = syndec(reg, h);
  const auto text = TextSource::scripted(parse_sequence("0,1,0"));
  const auto p = run_interaction(Interaction::kG, t.learner, text, 4);
  EXPECT_NE(p[0], p[2]);
  EXPECT_NE(p[1], p[2]);
  EXPECT_EQ(p[2], p[3]);
  LanguageOracle oracle(reg);
  EXPECT_TRUE(oracle.equal(*p[0], *p[2]) == Tri::kTrue);
}

TEST(Syndec, ConstantStaysConstant) {
  Registry reg;
  const ProgramCode a = reg.evens();
  const Learner h = Learner::sequential("c", [a](const Sequence&) -> Conjecture { return a; });
  const auto p = run_interaction(Interaction::kG, syndec(reg, h).learner,
                                 TextSource::scripted(parse_sequence("0,2,4,6")), 5);
  EXPECT_TRUE(mind_changes(p).empty());
  EXPECT_EQ(p[0], reg.pad(a, Sequence{}));
}

TEST(Syndec, HoldsOnRandomTexts) {
  Registry reg;
  LanguageOracle oracle(reg, 16);
  const Learner h = syndec(reg, caut_inf_demo_learner(reg)).learner;
  EXPECT_TRUE(h.has(Learner::kSynDec));
  for (const TextSource& t : sample_texts(LanguageDescr::all_naturals(16), 10, 20, 3)) {
    const auto p = run_interaction(Interaction::kG, h, t, 20);
    EXPECT_TRUE(check(Restriction::kSynDec, p, t, oracle).holds());
  }
}

TEST(ConvToSdecCaut, ConvergesToTarget) {
  Registry reg;
  const Transformed t = conv_to_sdec_caut(reg, finite_sets_learner(reg));
  const auto text = TextSource::scripted(parse_sequence("1,4,1"));
  const auto p = run_interaction(Interaction::kG, t.learner, text, 10);
  EXPECT_EQ(p.back(), reg.ind({1, 4}));
}

TEST(ConvToSdecCaut, MindChangesAddTargetElements) {
  Registry reg;
  LanguageOracle oracle(reg, 16);
  const Transformed t = conv_to_sdec_caut(reg, finite_sets_learner(reg));
  for (const TextSource& text : finite_texts(2, 16, 20)) {
    const auto p = run_interaction(Interaction::kG, t.learner, text, 16);
    for (std::size_t i : mind_changes(p)) {
      EXPECT_EQ(oracle.proper_subset(*p[i - 1], *p[i]), Tri::kTrue);
      EXPECT_EQ(oracle.within_target(*p[i], text.target()), Tri::kTrue);
    }
  }
}

TEST(CautvarToConv, RequiresSynDec) {
  Registry reg;
  EXPECT_THROW(cautvar_to_conv(reg, finite_sets_learner(reg), CautVariant::kCaut),
               PreconditionError);
}

TEST(CautvarToConv, ConservativeOnFiniteSets) {
  Registry reg;
  LanguageOracle oracle(reg, 16);
  const Learner base = syndec(reg, finite_sets_learner(reg)).learner;
  for (CautVariant v : {CautVariant::kCaut, CautVariant::kCautTar, CautVariant::kCautFin}) {
    const Learner h = cautvar_to_conv(reg, base, v).learner;
    for (const TextSource& text : finite_texts(1, 14, 30)) {
      const auto p = run_interaction(Interaction::kG, h, text, 14);
      EXPECT_TRUE(check(Restriction::kConv, p, text, oracle).holds());
    }
  }
}

TEST(DropCautInf, LearnsFiniteLanguages) {
  Registry reg;
  LanguageOracle oracle(reg, 16);
  const Learner h = drop_caut_inf(reg, finite_sets_learner(reg)).learner;
  for (const TextSource& text : finite_texts(1, 16, 40)) {
    const auto p = run_interaction(Interaction::kG, h, text, 20);
    EXPECT_TRUE(check(Restriction::kEx, p, text, oracle).holds()) << to_string(text.prefix(20));
    EXPECT_EQ(oracle.equals_target(*p.back(), text.target()), Tri::kTrue);
  }
}

TEST(DropCautInf, RemovesCautInfViolation) {
  Registry reg;
  LanguageOracle oracle(reg, 16);
  const Learner h = caut_inf_demo_learner(reg);
  const TextSource text = canonical_text(LanguageDescr::evens(16));
  EXPECT_TRUE(check(Restriction::kCautInf, run_interaction(Interaction::kG, h, text, 16), text,
                    oracle)
                  .violated());
  const auto p = run_interaction(Interaction::kG, drop_caut_inf(reg, h).learner, text, 16);
  EXPECT_FALSE(check(Restriction::kCautInf, p, text, oracle).violated());
}

TEST(SdSyndec, PadsByUpwardClosure) {
  Registry reg;
  const ProgramCode zero = reg.ind({0});
  const Learner h = Learner::set_driven("dip", [&reg, zero](const NatSet& d) -> Conjecture {
    if (d.empty() || d == NatSet{0, 1}) return zero;
    return reg.ind(d);
  });
  const Learner s = sd_syndec(reg, h);
  // {D ⊆ {0,1} : h(D) = h({0,1})} = {∅, {0}, {0,1}} misses {1}.
  EXPECT_EQ(s(NatSet{0, 1}), reg.pad(zero, BigNat(3)));
  EXPECT_EQ(s(NatSet{0}), reg.pad(zero, BigNat(0)));
  EXPECT_EQ(s(NatSet{2}), reg.pad(reg.ind({2}), BigNat(0)));
  NatSet big;
  for (Nat x = 0; x <= kMaxSdSyndecSet; ++x) big.insert(x);
  EXPECT_THROW(s(big), PreconditionError);
}

TEST(SdToConvSdecCaut, ContainsDataAndStabilises) {
  Registry reg;
  LanguageOracle oracle(reg, 16);
  const Learner inner = sd_syndec(reg, finite_sets_learner(reg));
  const Learner h = sd_to_conv_sdec_caut(reg, inner);
  for (const NatSet& d : testing::small_sets(5, 3)) {
    EXPECT_EQ(oracle.contains_all(*h(d), d), Tri::kTrue) << to_string(d);
    EXPECT_EQ(same_conjecture_subsets(inner, d).front(), d);
  }
  // N(D) for a learner that ignores 9.
  const Learner lazy = Learner::set_driven("lazy", [&reg](const NatSet& d) -> Conjecture {
    NatSet c = d;
    c.erase(9);
    return reg.ind(c);
  });
  const auto n = same_conjecture_subsets(lazy, {1, 9});
  EXPECT_EQ(n, (std::vector<NatSet>{{1}, {1, 9}}));
}

class Poison : public ::testing::Test {
 protected:
  Registry reg;
  PoisonFamily family = PoisonFamily::residues();
  std::vector<SetShape> members = {SetShape::finite({0}), SetShape::finite({0, 1}),
                                   SetShape::finite({0, 1, 2})};
};

TEST_F(Poison, LockingConjectureKeepsItsLanguage) {
  const Learner h = finite_sets_learner(reg);
  const Transformed t = poison_with_N(reg, h, family, members);
  const Sequence s = parse_sequence("0,1");
  EXPECT_EQ(t.anchor(s), s);
  EXPECT_EQ(language_of(reg, t.learner(s)), SetShape::finite({0, 1}));
}

TEST_F(Poison, NonLockingConjectureIsPoisoned) {
  const ProgramCode guess = reg.ind({0, 1});
  // Guesses {0,1} until 1 shows up, then moves past it.
  const Learner h = Learner::sequential("jumpy", [this, guess](const Sequence& s) -> Conjecture {
    NatSet c = content(s);
    if (!c.count(1)) return guess;
    c.insert(2);
    return reg.ind(c);
  });
  const Transformed t = poison_with_N(reg, h, family, members);
  const Sequence s = parse_sequence("0");
  EXPECT_TRUE(t.anchor(s).empty());
  const SetShape w = language_of(reg, t.learner(s));
  const SetShape n = family.member(0).unite(SetShape::finite(content(s)));
  EXPECT_TRUE(n.subset_of(w));
  EXPECT_TRUE(w.subset_of(n.unite(SetShape::finite({0, 1}))));
  EXPECT_FALSE(w.is_finite());
}

TEST_F(Poison, FamilyCheck) {
  EXPECT_FALSE(check_poison_family(family, members, 16).has_value());
  EXPECT_FALSE(check_poison_family(family, {SetShape::naturals()}, 4).has_value());
  const std::vector<SetShape> bad = {family.member(3).unite(SetShape::finite({0}))};
  EXPECT_TRUE(check_poison_family(family, bad, 4).has_value());
  EXPECT_THROW(poison_with_N(reg, finite_sets_learner(reg), family, bad), PreconditionError);
}

TEST_F(Poison, MonToSdecDenseIsIdentity) {
  const Learner h = finite_sets_learner(reg);
  const Transformed t = mon_to_sdec(reg, h, Density::is_dense(), family, members);
  const Sequence s = parse_sequence("3,1");
  EXPECT_EQ(t.learner(s), h(s));
  EXPECT_EQ(t.anchor(s), s);
}

TEST_F(Poison, MonToSdecNotDense) {
  LanguageOracle oracle(reg, 16);
  std::vector<SetShape> finite_members;
  for (const NatSet& d : testing::small_sets(4, 3)) finite_members.push_back(SetShape::finite(d));
  const Transformed t = mon_to_sdec(reg, finite_sets_learner(reg), Density::not_dense({9}), family,
                                    finite_members);
  for (const NatSet& l : testing::small_sets(4, 3)) {
    for (const TextSource& text : sample_texts(LanguageDescr::finite(l), 1, 10, 50 + l.size())) {
      const auto p = run_interaction(Interaction::kG, t.learner, text, 10);
      EXPECT_TRUE(check(Restriction::kSDec, p, text, oracle).holds()) << to_string(text.prefix(10));
    }
  }
  // Once the witness is in the data, ℕ is conjectured.
  const auto p = run_interaction(Interaction::kG, t.learner,
                                 TextSource::scripted(parse_sequence("9,0")), 6);
  EXPECT_EQ(language_of(reg, p.back()), SetShape::naturals());
}

}  // namespace
}  // namespace limitlearn
