#ifndef LIMITLEARN_ORACLE_H_
#define LIMITLEARN_ORACLE_H_

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "limitlearn/language.h"
#include "limitlearn/numbering.h"

namespace limitlearn {

/// Three-valued answers for set relations.
enum class Tri { kFalse, kTrue, kUnknown };

inline Tri tri(bool b) { return b ? Tri::kTrue : Tri::kFalse; }
Tri tri_and(Tri a, Tri b);
Tri tri_not(Tri a);

/// What the oracle knows about W_e.
struct Resolution {
  enum class Source { kDeclared, kDescribed, kEnumerated, kUnresolved };

  Source source = Source::kUnresolved;
  /// Exact W_e, or W_e ∩ [0,U] when `bounded`.
  std::optional<SetShape> shape;
  bool bounded = false;
};

/// Decides relations between the languages W_e of hypotheses.
///
/// Codes are resolved from declared descriptors first, then from the
/// registry's exact describers, and finally (when enabled) by bounded
/// enumeration: W^d and W^{2d} are compared on [0,U] and, when they agree, the
/// result is used and flagged as bounded.
class LanguageOracle {
 public:
  explicit LanguageOracle(const Registry& registry, Nat universe = 64,
                          Nat depth = 200, bool fallback = true);

  void declare(ProgramCode e, const LanguageDescr& language);

  Nat universe() const { return universe_; }
  Nat depth() const { return depth_; }
  bool fallback() const { return fallback_; }
  const Registry& registry() const { return registry_; }

  /// Throws PreconditionError for codes that cannot be resolved when the
  /// enumeration fallback is disabled.
  Resolution resolve(ProgramCode e) const;

  Tri equal(ProgramCode a, ProgramCode b) const;
  Tri subset(ProgramCode a, ProgramCode b) const;
  Tri proper_subset(ProgramCode a, ProgramCode b) const;
  Tri is_finite(ProgramCode e) const;
  /// D ⊆ W_e.
  Tri contains_all(ProgramCode e, const NatSet& d) const;
  /// W_e = L, W_e ⊆ L and L ⊂ W_e for an exact target L.
  Tri equals_target(ProgramCode e, const SetShape& target) const;
  Tri within_target(ProgramCode e, const SetShape& target) const;
  Tri properly_contains_target(ProgramCode e, const SetShape& target) const;
  /// (W_a ∩ L) ⊆ (W_b ∩ L); on success also the least counterexample.
  Tri subset_on(ProgramCode a, ProgramCode b, const SetShape& target,
                std::optional<Nat>* witness = nullptr) const;

  /// True if any answer so far relied on bounded enumeration.
  bool used_bounded() const;

 private:
  /// Both shapes cut to [0,U] when either is bounded.
  std::optional<std::pair<SetShape, SetShape>> pair_of(const Resolution& a,
                                                       const Resolution& b,
                                                       bool* bounded) const;

  const Registry& registry_;
  Nat universe_;
  Nat depth_;
  bool fallback_;
  std::map<ProgramCode, LanguageDescr> declared_;
  mutable std::mutex mu_;
  mutable std::map<ProgramCode, Resolution> cache_;
  mutable bool used_bounded_ = false;
};

}  // namespace limitlearn

#endif  // LIMITLEARN_ORACLE_H_
