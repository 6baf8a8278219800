#ifndef LIMITLEARN_LANGUAGE_H_
#define LIMITLEARN_LANGUAGE_H_

#include <optional>
#include <string>
#include <vector>

#include "limitlearn/types.h"

namespace limitlearn {

/// An ultimately periodic subset of ℕ, kept in canonical form (minimal period,
/// minimal threshold). Finite, cofinite and parity sets, and anything built
/// from them by union, intersection and difference, are represented exactly,
/// so subset, equality and finiteness are decided without a search bound.
class SetShape {
 public:
  SetShape();  // the empty set

  static SetShape empty() { return SetShape(); }
  static SetShape finite(const NatSet& elements);
  static SetShape cofinite(const NatSet& excluded);
  static SetShape naturals();
  static SetShape evens();
  /// {x : x ≡ residue (mod modulus)}.
  static SetShape residue_class(Nat residue, Nat modulus);
  /// {0,…,n-1}.
  static SetShape below(Nat n);

  bool contains(Nat x) const;
  bool is_finite() const;
  /// Members ≤ bound.
  NatSet elements_upto(Nat bound) const;
  /// All members; requires is_finite().
  NatSet finite_elements() const;

  SetShape unite(const SetShape& other) const;
  SetShape intersect(const SetShape& other) const;
  SetShape minus(const SetShape& other) const;
  SetShape complement() const;

  bool subset_of(const SetShape& other) const;
  bool proper_subset_of(const SetShape& other) const;
  /// True when this and other differ on finitely many points.
  bool finite_variant_of(const SetShape& other) const;

  /// Least natural not in the set (always exists unless the set is ℕ).
  std::optional<Nat> least_absent() const;

  /// Human-readable form: {0,2}, N, N\{3}, 2N, or a periodic description.
  std::string to_string() const;

  friend bool operator==(const SetShape&, const SetShape&) = default;

 private:
  template <typename Op>
  static SetShape combine(const SetShape& a, const SetShape& b, Op op);
  void normalize();

  Nat threshold_ = 0;
  std::vector<bool> head_;  // membership of x < threshold_
  Nat period_ = 1;
  std::vector<bool> tail_ = {false};  // membership of x ≥ threshold_ by x mod period_
};

/// Language descriptor in the form experiments are configured with.
struct LanguageDescr {
  enum class Kind { kFinite, kCofinite, kEvens, kAllNaturals, kCe };

  Kind kind = Kind::kFinite;
  NatSet elements;  // members for kFinite, excluded points for kCofinite
  ProgramCode program;  // for kCe
  Nat universe = 64;

  static LanguageDescr finite(NatSet elements, Nat universe = 64);
  static LanguageDescr cofinite(NatSet excluded, Nat universe = 64);
  static LanguageDescr evens(Nat universe = 64);
  static LanguageDescr all_naturals(Nat universe = 64);
  static LanguageDescr ce(ProgramCode program, Nat universe = 64);

  bool decidable() const { return kind != Kind::kCe; }
  /// Exact shape; nullopt for kCe.
  std::optional<SetShape> shape() const;
  std::string to_string() const;
};

std::string kind_name(LanguageDescr::Kind kind);

}  // namespace limitlearn

#endif  // LIMITLEARN_LANGUAGE_H_
