#include "limitlearn/probes.h"

namespace limitlearn {

Checker checker_for(Restriction r, const LanguageOracle& oracle) {
  const LanguageOracle* o = &oracle;
  return [r, o](const HypothesisSequence& p, const TextSource& text) {
    return check(r, p, text, *o);
  };
}

DelayFunction DelayFunction::identity() {
  return {[](Nat n) { return n; }};
}

DelayFunction DelayFunction::halving() {
  return {[](Nat n) { return n / 2; }};
}

DelayFunction DelayFunction::from_values(std::vector<Nat> values) {
  return {[values = std::move(values)](Nat n) {
    if (values.empty()) return Nat{0};
    return n < values.size() ? values[n] : values.back();
  }};
}

bool DelayFunction::valid_on(Nat window) const {
  for (Nat n = 0; n < window; ++n) {
    if (r(n) > n) return false;
    if (n > 0 && r(n) < r(n - 1)) return false;
  }
  return true;
}

std::optional<Nat> DelayFunction::reaches(Nat m, Nat window) const {
  for (Nat n = 0; n < window; ++n) {
    if (r(n) >= m) return n;
  }
  return std::nullopt;
}

std::string probe_status_name(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::kHolds:
      return "holds";
    case ProbeStatus::kFails:
      return "fails";
    case ProbeStatus::kPremise:
      return "premise";
  }
  return "?";
}

ProbeResult check_delayable_instance(const Checker& check,
                                     const HypothesisSequence& p,
                                     const TextSource& text, const DelayFunction& r,
                                     const TextSource& text2) {
  const Nat n = p.size();
  if (!r.valid_on(n)) return {ProbeStatus::kPremise, "delay map is not admissible"};
  if (!(text.target() == text2.target())) {
    return {ProbeStatus::kPremise, "texts have different content"};
  }
  const Sequence a = text.prefix(n);
  const Sequence b = text2.prefix(n);
  for (Nat k = 0; k < n; ++k) {
    const Sequence delayed(a.begin(), a.begin() + r(k));
    const Sequence seen(b.begin(), b.begin() + k);
    if (!is_subset(content(delayed), content(seen))) {
      return {ProbeStatus::kPremise,
              "content(T[r(" + std::to_string(k) + ")]) not within content(T'[" +
                  std::to_string(k) + "])"};
    }
  }
  if (!check(p, text).holds()) {
    return {ProbeStatus::kPremise, "(p, T) does not pass"};
  }
  HypothesisSequence delayed(n);
  for (Nat k = 0; k < n; ++k) delayed[k] = p[r(k)];
  const Verdict after = check(delayed, text2);
  if (after.holds()) return {ProbeStatus::kHolds, ""};
  return {ProbeStatus::kFails, "(p o r, T') " + outcome_name(after.outcome) + ": " +
                                   after.explanation};
}

ProbeResult check_pseudo_semantic_instance(const Checker& check,
                                           const HypothesisSequence& p,
                                           const HypothesisSequence& p2,
                                           const TextSource& text,
                                           const LanguageOracle& oracle) {
  if (p.size() != p2.size()) return {ProbeStatus::kPremise, "length mismatch"};
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i] || !p2[i]) return {ProbeStatus::kPremise, "diverged entry"};
    if (oracle.equal(*p[i], *p2[i]) != Tri::kTrue) {
      return {ProbeStatus::kPremise,
              "Sem fails at " + std::to_string(i) + ": languages differ"};
    }
    if (i + 1 < p.size() && p2[i] != p2[i + 1] && p[i] == p[i + 1]) {
      return {ProbeStatus::kPremise,
              "Mc fails at " + std::to_string(i) + ": new mind change"};
    }
  }
  if (!check(p, text).holds()) return {ProbeStatus::kPremise, "(p, T) does not pass"};
  const Verdict after = check(p2, text);
  if (after.holds()) return {ProbeStatus::kHolds, ""};
  return {ProbeStatus::kFails, "(p', T) " + outcome_name(after.outcome) + ": " +
                                   after.explanation};
}

}  // namespace limitlearn
