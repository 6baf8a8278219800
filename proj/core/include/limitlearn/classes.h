#ifndef LIMITLEARN_CLASSES_H_
#define LIMITLEARN_CLASSES_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "limitlearn/language.h"
#include "limitlearn/learner.h"
#include "limitlearn/numbering.h"
#include "limitlearn/oracle.h"

namespace limitlearn {

struct FamilyMember {
  std::string name;
  LanguageDescr language;
  ProgramCode code;  // registered conjecture for the member
};

struct FamilyDescr {
  std::string name;
  std::vector<FamilyMember> members;
  Nat bound = 0;

  /// Declares every member's code with its descriptor.
  void declare(LanguageOracle& oracle) const;
  std::vector<SetShape> shapes() const;
  /// Tab-separated manifest: family, member, kind, descriptor, code.
  void write_manifest(std::ostream& out) const;
};

struct SeparatedFamily {
  FamilyDescr family;
  Learner learner;
};

/// {2ℕ} ∪ {L_k : k ≤ K}, L_k = {0, 2, …, 2k, 2k+1}. The set-driven learner
/// conjectures 2ℕ on even data and L_k once 2k+1 is the least odd datum.
SeparatedFamily smon_separator(Registry& registry, Nat k_max);

/// {2ℕ} ∪ {L_k : k ≤ K}, L_k = {0, …, 2k+1}. The set-driven learner
/// conjectures 2ℕ on even data and L_k once 2k+1 is the largest odd datum.
SeparatedFamily mon_separator(Registry& registry, Nat k_max);

/// h(D, t) = φ_{max D}(t), run with `fuel` steps. Empty D is rejected with
/// PreconditionError.
Learner maxprog_psd_learner(const Registry& registry, Nat fuel = 1000);

/// h(D) = ind(D).
Learner finite_sets_learner(Registry& registry);

}  // namespace limitlearn

#endif  // LIMITLEARN_CLASSES_H_
