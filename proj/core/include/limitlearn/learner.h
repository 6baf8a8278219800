#ifndef LIMITLEARN_LEARNER_H_
#define LIMITLEARN_LEARNER_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "limitlearn/numbering.h"
#include "limitlearn/sequences.h"
#include "limitlearn/text.h"
#include "limitlearn/types.h"

namespace limitlearn {

/// A conjecture, or nullopt when the learner diverged.
using Conjecture = std::optional<ProgramCode>;

/// Learning sequence p: entry i is the conjecture after i inputs.
using HypothesisSequence = std::vector<Conjecture>;

enum class Interaction { kG, kPsd, kSd };

std::string interaction_name(Interaction op);
std::optional<Interaction> parse_interaction(const std::string& name);

/// A learner in one of the three interfaces, or a program of the numbering run
/// with a fuel budget. The name identifies the learner; combinators derive the
/// names of their outputs from it, so distinct learners need distinct names.
class Learner {
 public:
  enum class Kind { kSequential, kPartiallySetDriven, kSetDriven, kProgram };

  enum Property : unsigned {
    kTotal = 1u << 0,
    kSynDec = 1u << 1,
  };

  using SeqFn = std::function<Conjecture(const Sequence&)>;
  using PsdFn = std::function<Conjecture(const NatSet&, Nat)>;
  using SdFn = std::function<Conjecture(const NatSet&)>;

  static Learner sequential(std::string name, SeqFn fn, unsigned properties = kTotal);
  static Learner partially_set_driven(std::string name, PsdFn fn,
                                      unsigned properties = kTotal);
  static Learner set_driven(std::string name, SdFn fn, unsigned properties = kTotal);
  /// φ_e on sequence codes; exhausting `fuel` counts as divergence.
  static Learner program(const Registry& registry, ProgramCode e, Nat fuel);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  unsigned properties() const { return properties_; }
  bool has(Property p) const { return (properties_ & p) != 0; }
  Learner with_name(std::string name) const;
  Learner with_properties(unsigned properties) const;

  /// The G view: every learner acts on sequences.
  Conjecture operator()(const Sequence& seq) const;
  /// The Psd view; defined for partially set-driven and set-driven learners.
  Conjecture operator()(const NatSet& data, Nat steps) const;
  /// The Sd view; defined for set-driven learners.
  Conjecture operator()(const NatSet& data) const;

  /// The program code for programs; nullopt otherwise.
  std::optional<ProgramCode> code() const { return code_; }

 private:
  Learner() = default;

  Kind kind_ = Kind::kSequential;
  std::string name_;
  unsigned properties_ = 0;
  SeqFn seq_;
  PsdFn psd_;
  SdFn sd_;
  std::optional<ProgramCode> code_;
};

/// entry i = h(T[i]) for G, h(content(T[i]), i) for Psd and h(content(T[i]))
/// for Sd, for i < n. Divergence is recorded as an empty entry.
HypothesisSequence run_interaction(Interaction op, const Learner& h,
                                   const TextSource& text, std::size_t n);

/// Indices i ≥ 1 with p(i) ≠ p(i−1).
std::vector<std::size_t> mind_changes(const HypothesisSequence& p);

std::string to_string(const HypothesisSequence& p);

}  // namespace limitlearn

#endif  // LIMITLEARN_LEARNER_H_
