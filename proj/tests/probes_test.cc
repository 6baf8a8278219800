#include <gtest/gtest.h>

#include "limitlearn/probes.h"

namespace limitlearn {
namespace {

struct Fixture {
  Registry reg;
  LanguageOracle oracle{reg, 32, 40, false};
  std::vector<ProgramCode> pool;

  Fixture() {
    for (const NatSet& d : std::vector<NatSet>{{}, {0}, {0, 1}, {1, 2}, {0, 1, 2}}) {
      pool.push_back(reg.ind(d));
    }
    pool.push_back(reg.naturals());
    pool.push_back(reg.evens());
  }

  HypothesisSequence random_p(DeterministicRng& rng, std::size_t n) {
    HypothesisSequence p;
    for (std::size_t i = 0; i < n; ++i) {
      p.push_back(i > 0 && rng.below(2) == 0 ? *p.back() : pool[rng.below(pool.size())]);
    }
    return p;
  }
};

Sequence random_script(DeterministicRng& rng, std::size_t n) {
  Sequence s;
  for (std::size_t i = 0; i < n; ++i) {
    const Nat r = rng.below(4);
    s.push_back(r == 3 ? kPause : Elem::datum(r));
  }
  return s;
}

DelayFunction random_delay(DeterministicRng& rng, std::size_t n) {
  std::vector<Nat> values;
  Nat cur = 0;
  for (Nat k = 0; k < n; ++k) {
    if (cur < k && rng.below(2) == 0) cur += 1 + rng.below(k - cur);
    values.push_back(cur);
  }
  return DelayFunction::from_values(values);
}

TEST(DelayFunction, Basics) {
  EXPECT_TRUE(DelayFunction::identity().valid_on(20));
  EXPECT_TRUE(DelayFunction::halving().valid_on(20));
  EXPECT_EQ(DelayFunction::halving().reaches(4, 20), 8u);
  EXPECT_FALSE(DelayFunction::from_values({0, 2}).valid_on(2));
  EXPECT_FALSE(DelayFunction::from_values({0, 1, 0}).valid_on(3));
  EXPECT_FALSE(DelayFunction::from_values({0, 0, 0}).reaches(1, 3).has_value());
}

TEST(Delayable, IdentityOnSameText) {
  Fixture f;
  const auto text = TextSource::scripted(parse_sequence("0,1,2"));
  const HypothesisSequence p = {f.reg.ind({}), f.reg.ind({0}), f.reg.ind({0, 1}), f.reg.ind({0, 1, 2})};
  for (Restriction r : all_restrictions()) {
    const ProbeResult res = check_delayable_instance(checker_for(r, f.oracle), p, text,
                                                     DelayFunction::identity(), text);
    EXPECT_NE(res.status, ProbeStatus::kFails) << restriction_name(r);
  }
}

TEST(Delayable, ConservativeSequenceUnderHalving) {
  Fixture f;
  const auto text = TextSource::scripted(parse_sequence("0,1,#,2"));
  const HypothesisSequence p = {f.reg.ind({}),     f.reg.ind({0}),       f.reg.ind({0, 1}),
                                f.reg.ind({0, 1}), f.reg.ind({0, 1, 2}), f.reg.ind({0, 1, 2})};
  const ProbeResult res = check_delayable_instance(checker_for(Restriction::kConv, f.oracle), p,
                                                   text, DelayFunction::halving(), text);
  EXPECT_EQ(res.status, ProbeStatus::kHolds) << res.detail;
}

// Every restriction except Ex survives delaying on a finite window; Ex fails
// because the delayed window may end before the final conjecture.
TEST(Delayable, RandomInstances) {
  Fixture f;
  DeterministicRng rng(61);
  int probed = 0;
  for (int c = 0; c < 300; ++c) {
    const std::size_t n = 2 + rng.below(6);
    const Sequence script = random_script(rng, n);
    const auto text = TextSource::scripted(script);
    // T' shows all data up front, then repeats T.
    Sequence front;
    for (Nat x : content(script)) front.push_back(Elem::datum(x));
    const auto text2 = TextSource::scripted(concat(front, script));
    const HypothesisSequence p = f.random_p(rng, n);
    const DelayFunction r = random_delay(rng, n);
    for (Restriction res : all_restrictions()) {
      if (res == Restriction::kEx) continue;
      for (const TextSource* t2 : {&text, &text2}) {
        const ProbeResult out = check_delayable_instance(checker_for(res, f.oracle), p, text, r, *t2);
        EXPECT_NE(out.status, ProbeStatus::kFails) << restriction_name(res) << ": " << out.detail;
        if (out.status == ProbeStatus::kHolds) ++probed;
      }
    }
  }
  EXPECT_GT(probed, 1000);
}

TEST(Delayable, NonDelayableControlIsCaught) {
  Fixture f;
  const ProgramCode a = f.reg.ind({0}), b = f.reg.ind({0, 1});
  // p(1) = p(2) syntactically.
  const Checker control = [](const HypothesisSequence& p, const TextSource&) {
    Verdict v;
    if (p.size() > 2 && p[1] != p[2]) {
      v.outcome = Outcome::kViolated;
      v.indices = {1, 2};
    }
    return v;
  };
  const auto text = TextSource::scripted(parse_sequence("0,1"));
  const ProbeResult res = check_delayable_instance(control, {a, b, b}, text,
                                                   DelayFunction::from_values({0, 0, 1}), text);
  EXPECT_EQ(res.status, ProbeStatus::kFails);
}

TEST(Delayable, PremiseViolationsAreDistinct) {
  Fixture f;
  const auto checker = checker_for(Restriction::kCaut, f.oracle);
  const HypothesisSequence p = {f.reg.ind({0}), f.reg.ind({0})};
  const auto text = TextSource::scripted(parse_sequence("0,1"));
  const auto other = TextSource::scripted(parse_sequence("0"));
  EXPECT_EQ(check_delayable_instance(checker, p, text, DelayFunction::identity(), other).status,
            ProbeStatus::kPremise);
  EXPECT_EQ(check_delayable_instance(checker, p, text, DelayFunction::from_values({1, 1}), text).status,
            ProbeStatus::kPremise);
  // T' delays the data, so content(T[r(n)]) ⊄ content(T'[n]).
  const auto late = TextSource::scripted(parse_sequence("#,#,0,1"));
  const HypothesisSequence q = {f.reg.ind({0}), f.reg.ind({0}), f.reg.ind({0})};
  EXPECT_EQ(check_delayable_instance(checker, q, text, DelayFunction::identity(), late).status,
            ProbeStatus::kPremise);
}

TEST(PseudoSemantic, PadVariantKeepsDecisiveness) {
  Fixture f;
  const ProgramCode a = f.reg.ind({0}), b = f.reg.ind({0, 1});
  const HypothesisSequence p = {a, a, b, b};
  const HypothesisSequence p2 = {f.reg.pad(a, BigNat(1)), f.reg.pad(a, BigNat(1)),
                                 f.reg.pad(b, BigNat(5)), f.reg.pad(b, BigNat(5))};
  const auto text = TextSource::scripted(parse_sequence("0,1"));
  const ProbeResult res =
      check_pseudo_semantic_instance(checker_for(Restriction::kDec, f.oracle), p, p2, text, f.oracle);
  EXPECT_EQ(res.status, ProbeStatus::kHolds) << res.detail;
  EXPECT_EQ(check_pseudo_semantic_instance(checker_for(Restriction::kDec, f.oracle), p, p, text,
                                           f.oracle)
                .status,
            ProbeStatus::kHolds);
}

TEST(PseudoSemantic, SyntacticControlIsCaught) {
  Fixture f;
  const ProgramCode a = f.reg.ind({0}), b = f.reg.ind({0, 1});
  // p(0) = p(2) syntactically.
  const Checker control = [](const HypothesisSequence& p, const TextSource&) {
    Verdict v;
    if (p.size() > 2 && p[0] != p[2]) v.outcome = Outcome::kViolated;
    return v;
  };
  const auto text = TextSource::scripted(parse_sequence("0,1"));
  const HypothesisSequence p = {a, b, a};
  const HypothesisSequence p2 = {a, b, f.reg.pad(a, BigNat(2))};
  EXPECT_EQ(check_pseudo_semantic_instance(control, p, p2, text, f.oracle).status, ProbeStatus::kFails);
}

TEST(PseudoSemantic, PremiseViolations) {
  Fixture f;
  const ProgramCode a = f.reg.ind({0}), b = f.reg.ind({0, 1});
  const auto checker = checker_for(Restriction::kT, f.oracle);
  const auto text = TextSource::scripted(parse_sequence("0,1"));
  EXPECT_EQ(check_pseudo_semantic_instance(checker, {a, a}, {a, b}, text, f.oracle).status,
            ProbeStatus::kPremise);
  EXPECT_EQ(check_pseudo_semantic_instance(checker, {a, a}, {a, f.reg.pad(a, BigNat(1))}, text,
                                           f.oracle)
                .status,
            ProbeStatus::kPremise);
  EXPECT_EQ(check_pseudo_semantic_instance(checker, {a}, {a, a}, text, f.oracle).status,
            ProbeStatus::kPremise);
}

// Every restriction except SynDec is pseudo-semantic; SynDec can fail when a
// pad variant makes two distinct codes equal.
TEST(PseudoSemantic, RandomInstances) {
  Fixture f;
  DeterministicRng rng(67);
  for (int c = 0; c < 300; ++c) {
    const std::size_t n = 1 + rng.below(6);
    const auto text = TextSource::scripted(random_script(rng, n));
    const HypothesisSequence p = f.random_p(rng, n);
    HypothesisSequence p2;
    Nat tag = rng.below(3);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && p[i] != p[i - 1]) tag = rng.below(3);
      p2.push_back(tag == 0 ? *p[i] : f.reg.pad(*p[i], BigNat(tag)));
    }
    for (Restriction r : all_restrictions()) {
      if (r == Restriction::kSynDec) continue;
      const ProbeResult res =
          check_pseudo_semantic_instance(checker_for(r, f.oracle), p, p2, text, f.oracle);
      EXPECT_NE(res.status, ProbeStatus::kFails) << restriction_name(r) << ": " << res.detail;
    }
  }
}

}  // namespace
}  // namespace limitlearn
