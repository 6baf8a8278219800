#ifndef LIMITLEARN_COMBINATORS_H_
#define LIMITLEARN_COMBINATORS_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "limitlearn/language.h"
#include "limitlearn/learner.h"
#include "limitlearn/numbering.h"

namespace limitlearn {

/// Caps on the finite searches inside the constructions. Sequences quantified
/// over in the proofs (ρ, τ) are cut at `probe_len` extra elements.
struct SearchLimits {
  std::size_t probe_len = 3;
  /// Data drawn from W^t for ρ are cut at this value.
  Nat probe_max_datum = 12;
};

/// A transformed learner together with the sequence each conjecture is taken
/// from (max M(σ), f(σ), the anchor σ̂, ...).
struct Transformed {
  Learner learner;
  std::function<Sequence(const Sequence&)> anchor;
};

/// Caches a learner's answers per input sequence.
Learner memoize(const Learner& h);

/// h′(σ) = h(max M(σ)) with M(σ) = {σ′ ⊑ σ : Φ_e(σ′) ≤ |σ|} ∪ {λ}. h(λ) is
/// computed once with `lambda_fuel`; throws PreconditionError if it does not
/// converge.
Transformed totalize(const Registry& registry, ProgramCode e,
                     Nat lambda_fuel = 1u << 20);

/// h′(σ) = h(f(σ)) where f looks for ever longer non-locking extensions.
Transformed strongly_locking(const Learner& h, SearchLimits limits = {});

/// h′(σ) = pad(h(σ), σ) when σ = λ or h changes its mind on σ, else h′(σ⁻).
Transformed syndec(Registry& registry, const Learner& h);

/// h′(σ) = h(max M(σ)), M(σ) = {τ ⊑ σ : ∀x ∈ content(τ): Φ_{h(τ)}(x) ≤ |σ|}.
/// Meant for conservative learners.
Transformed conv_to_sdec_caut(const Registry& registry, const Learner& h);

enum class CautVariant { kCaut, kCautTar, kCautFin };

/// The anchored conservative learner built from a syntactically decisive
/// learner satisfying one of the cautious variants. Throws PreconditionError
/// for learners without the SynDec property.
Transformed cautvar_to_conv(Registry& registry, const Learner& h, CautVariant variant,
                            SearchLimits limits = {});

/// h′(σ) = p(σ̂), where p(σ) enumerates content(σ) and W_{h(σ)} while no
/// extension changes h. The anchor σ̂ moves to σ when h changes its mind on σ
/// or when the guard of the previous anchor fails by stage |σ|.
Transformed drop_caut_inf(Registry& registry, const Learner& h,
                          SearchLimits limits = {});

/// Largest set accepted by sd_syndec (its test scans 2^|C| subsets).
inline constexpr std::size_t kMaxSdSyndecSet = 12;

/// Set-driven: pad(h(C), 0) when {D ⊆ C : h(D) = h(C)} is upward closed in C,
/// pad(h(C), |C|+1) otherwise.
Learner sd_syndec(Registry& registry, const Learner& h);

/// Set-driven: h′(D) = p(min N(D), h(D)), N(D) = {D′ ⊆ D : h(D′) = h(D)}.
Learner sd_to_conv_sdec_caut(Registry& registry, const Learner& h);

/// N(D) in canonical set-code order.
std::vector<NatSet> same_conjecture_subsets(const Learner& h, const NatSet& d);

/// Uniformly enumerable family (L_i) used by the poisoning construction.
struct PoisonFamily {
  std::string name;
  std::function<SetShape(Nat)> member;

  /// L_i = {x : x ≡ 1 (mod i+2)}.
  static PoisonFamily residues();
};

/// Checks the family's two properties exactly for i, j ≤ `up_to` against the
/// given class members: the L_i are pairwise not finite variants, and no
/// class member is a finite-variant superset of some L_i. Returns a
/// description of the first failure.
std::optional<std::string> check_poison_family(const PoisonFamily& family,
                                               const std::vector<SetShape>& members,
                                               Nat up_to);

/// h′(σ) = p(max M(σ)) where p(σ) follows W_{h(σ)} until some datum of it
/// changes h, and otherwise enumerates N(σ) = L_{|σ|} ∪ content(σ).
/// Throws PreconditionError when the family check fails.
Transformed poison_with_N(Registry& registry, const Learner& h,
                          const PoisonFamily& family,
                          const std::vector<SetShape>& class_members,
                          Nat check_up_to = 16);

/// Whether the learned class contains a superset of every finite set; not
/// decidable, so the caller states it. A non-dense class comes with a finite
/// set F that no member contains.
struct Density {
  bool dense = true;
  NatSet witness;

  static Density is_dense() { return {true, {}}; }
  static Density not_dense(NatSet f) { return {false, std::move(f)}; }
};

/// Dense: h itself. Not dense: ℕ is adjoined (conjectured once the data
/// contain the witness) and the result is poisoned.
Transformed mon_to_sdec(Registry& registry, const Learner& h, const Density& density,
                        const PoisonFamily& family,
                        const std::vector<SetShape>& class_members);

}  // namespace limitlearn

#endif  // LIMITLEARN_COMBINATORS_H_
