#ifndef LIMITLEARN_CRITERIA_H_
#define LIMITLEARN_CRITERIA_H_

#include <optional>
#include <string>
#include <vector>

#include "limitlearn/learner.h"
#include "limitlearn/oracle.h"
#include "limitlearn/text.h"

namespace limitlearn {

enum class Restriction {
  kT,
  kEx,
  kConv,
  kCaut,
  kNU,
  kDec,
  kSNU,
  kSDec,
  kSMon,
  kMon,
  kWMon,
  kSynDec,
  kCautFin,
  kCautInf,
  kCautTar,
};

std::string restriction_name(Restriction r);
std::optional<Restriction> parse_restriction(const std::string& name);
std::vector<Restriction> all_restrictions();

enum class Outcome { kHolds, kViolated, kUnknown };

std::string outcome_name(Outcome o);

/// Result of checking a restriction on a finite window of (p, T).
struct Verdict {
  Restriction restriction = Restriction::kT;
  Outcome outcome = Outcome::kHolds;
  /// Indices of the violating pair or triple (Caut pairs are (earlier, later)).
  std::vector<std::size_t> indices;
  std::string explanation;
  /// Window length examined.
  std::size_t depth = 0;
  /// Ex: first index from which the window is syntactically constant.
  std::optional<std::size_t> converged_by;
  /// Mon: a target element lost between the cited conjectures.
  std::optional<Nat> datum;
  /// Some relation was decided by bounded enumeration.
  bool bounded = false;

  bool holds() const { return outcome == Outcome::kHolds; }
  bool violated() const { return outcome == Outcome::kViolated; }
};

struct CheckOptions {
  /// Check the part before the first divergence instead of rejecting the
  /// sequence.
  bool allow_partial = false;
};

/// Evaluates the restriction over all index pairs or triples of the window.
/// Throws PreconditionError for sequences containing divergence (unless
/// allowed) and for unresolvable codes when the oracle has no fallback.
Verdict check(Restriction r, const HypothesisSequence& p, const TextSource& text,
              const LanguageOracle& oracle, CheckOptions options = {});

/// Re-evaluates the clause on the cited indices; true when the violation is
/// reproduced.
bool reverify(const Verdict& v, const HypothesisSequence& p, const TextSource& text,
              const LanguageOracle& oracle);

/// restriction, outcome, indices, depth.
std::string to_tsv(const Verdict& v);

struct LockingSearch {
  std::size_t max_len = 6;
  std::size_t probe_len = 3;
  /// Candidates examined before giving up.
  std::size_t max_candidates = 20000;
};

/// Searches, in code order, for σ over L ∩ [0,U] (with pauses) such that h(σ)
/// is correct for L and h(σ⋄τ) = h(σ) for every probed τ. A miss proves
/// nothing.
std::optional<Sequence> find_locking(const Learner& h, const SetShape& language,
                                     const LanguageOracle& oracle,
                                     LockingSearch limits = {});

}  // namespace limitlearn

#endif  // LIMITLEARN_CRITERIA_H_
