#ifndef LIMITLEARN_PROBES_H_
#define LIMITLEARN_PROBES_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "limitlearn/criteria.h"

namespace limitlearn {

/// A predicate on (p, T) windows; check() for a named restriction or a
/// hand-written control.
using Checker =
    std::function<Verdict(const HypothesisSequence& p, const TextSource& text)>;

Checker checker_for(Restriction r, const LanguageOracle& oracle);

/// A delay map r, tested on a finite window.
struct DelayFunction {
  std::function<Nat(Nat)> r;

  static DelayFunction identity();
  static DelayFunction halving();
  static DelayFunction from_values(std::vector<Nat> values);

  Nat operator()(Nat n) const { return r(n); }
  /// Non-decreasing with r(n) ≤ n for n < window.
  bool valid_on(Nat window) const;
  /// Least n < window with r(n) ≥ m; the liminf certificate for m.
  std::optional<Nat> reaches(Nat m, Nat window) const;
};

enum class ProbeStatus {
  kHolds,    // the instance confirms the closure property
  kFails,    // a counterexample instance
  kPremise,  // the premises of the property do not hold
};

struct ProbeResult {
  ProbeStatus status = ProbeStatus::kHolds;
  std::string detail;
};

std::string probe_status_name(ProbeStatus s);

/// Checks one instance of delayability: if (p, T) passes and
/// content(T[r(n)]) ⊆ content(T′[n]) on the window, then (p∘r, T′) passes.
ProbeResult check_delayable_instance(const Checker& check,
                                     const HypothesisSequence& p,
                                     const TextSource& text, const DelayFunction& r,
                                     const TextSource& text2);

/// Checks one instance of pseudo-semanticity: p′ ∈ Sem(p) ∩ Mc(p) and (p, T)
/// passes imply (p′, T) passes.
ProbeResult check_pseudo_semantic_instance(const Checker& check,
                                           const HypothesisSequence& p,
                                           const HypothesisSequence& p2,
                                           const TextSource& text,
                                           const LanguageOracle& oracle);

}  // namespace limitlearn

#endif  // LIMITLEARN_PROBES_H_
