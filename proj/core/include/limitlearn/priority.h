#ifndef LIMITLEARN_PRIORITY_H_
#define LIMITLEARN_PRIORITY_H_

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "limitlearn/learner.h"
#include "limitlearn/numbering.h"

namespace limitlearn {

/// id(A) = min(ℕ ∖ A).
Nat id_of(const NatSet& set);
Nat id_of(const Sequence& seq);
/// max(content(σ)) + 1, or 0 for empty content.
Nat id_prime(const Sequence& seq);

/// (x, y, σ). A P-branch witness is (s, s, λ).
struct WitnessTriple {
  Nat x = 0;
  Nat y = 0;
  Sequence sigma;

  friend bool operator==(const WitnessTriple&, const WitnessTriple&) = default;
};

std::string to_string(const WitnessTriple& w);

/// Bounded quantities of the constructions for adversaries given as learner
/// programs. Scans are cached per (e, t).
class WitnessScanner {
 public:
  explicit WitnessScanner(const Registry& registry, bool include_pause = false);

  const Registry& registry() const { return registry_; }
  bool include_pause() const { return include_pause_; }

  /// φ_e(σ) if it converges within t steps.
  std::optional<ProgramCode> conjecture(ProgramCode e, const Sequence& sigma, Nat t) const;
  NatSet w(ProgramCode code, Nat t) const;

  /// D^t_{e,σ}. Throws PreconditionError when φ_e(σ) does not converge within t.
  NatSet d_set(ProgramCode e, Nat t, const Sequence& sigma) const;

  /// P_{e,t}(s): no σ ∈ Seq_{≤t} with id(σ) = s has Φ_e(σ) ≤ t and
  /// content(σ) ⊂ W^t_{φ_e(σ)}.
  bool p_pred(ProgramCode e, Nat t, Nat s) const;
  /// Least σ by code with id(σ) = s, Φ_e(σ) ≤ t and content(σ) ⊂ W^t_{φ_e(σ)}.
  std::optional<Sequence> least_generalizing(ProgramCode e, Nat t, Nat s) const;

  /// Whether w is a t-witness for R_e.
  bool is_t_witness(const WitnessTriple& w, ProgramCode e, Nat t) const;

  /// The loop s = 0, …, max(B)+1. Never fails; a failure of the loop is
  /// reported as std::logic_error.
  WitnessTriple find_witness(const NatSet& blocked, ProgramCode e, Nat t) const;

  const std::vector<Sequence>& seq_leq(Nat t) const;

 private:
  struct Scan;
  const Scan& scan(ProgramCode e, Nat t) const;

  const Registry& registry_;
  bool include_pause_;
  mutable std::mutex mu_;
  mutable std::map<Nat, std::shared_ptr<const std::vector<Sequence>>> seqs_;
  mutable std::map<std::pair<Nat, Nat>, std::shared_ptr<const Scan>> scans_;
  mutable std::map<std::pair<Nat, Nat>, NatSet> w_cache_;
};

enum class Branch { kP, kD, kFollow };

std::string branch_name(Branch b);

struct TraceRecord {
  Nat t = 0;
  std::size_t e = 0;  // position in the pool
  ProgramCode program;
  WitnessTriple witness;
  bool kept = false;  // w_e(t−1) was (e,t)-legal
  Branch branch = Branch::kP;
  NatSet blocked;
};

/// w_e(t) per stage and requirement, in run order.
struct RequirementTrace {
  std::vector<TraceRecord> records;

  /// Tab-separated: t, e, x, y, code(σ), branch, blocked set.
  void write_tsv(std::ostream& out) const;
  /// Triples of requirement e for t = e, e+1, ….
  std::vector<WitnessTriple> witnesses(std::size_t e) const;
};

/// Partial learner under construction: first assignment wins.
class LearnerTable {
 public:
  explicit LearnerTable(Nat t_max = 0) : t_max_(t_max) {}

  /// False when σ already had a value.
  bool assign(const Sequence& sigma, ProgramCode code);
  std::optional<ProgramCode> lookup(const Sequence& sigma) const;
  Nat t_max() const { return t_max_; }
  std::size_t size() const { return entries_.size(); }
  const std::map<Sequence, ProgramCode, CodeLess>& entries() const { return entries_; }

  /// One line per entry: sequence, tab, code id. First line holds T_max.
  void dump(std::ostream& out) const;
  static LearnerTable parse(std::istream& in);

  /// The table as a learner; undefined entries diverge.
  Learner as_learner(const std::string& name) const;

  friend bool operator==(const LearnerTable&, const LearnerTable&) = default;

 private:
  Nat t_max_;
  std::map<Sequence, ProgramCode, CodeLess> entries_;
};

struct PriorityRun {
  LearnerTable table;
  RequirementTrace trace;
  /// Present for the SDec construction: h′ built from the table.
  std::optional<Learner> learner;
};

/// Algorithm for Dec: stages t = 0 … T_max−1 over the pool (pool order is
/// priority order).
PriorityRun build_dec(Registry& registry, const std::vector<ProgramCode>& pool, Nat t_max,
                      bool include_pause = false);

/// Algorithm for SDec, including the h′ wrapper with the poisoning f.
PriorityRun build_sdec(Registry& registry, const std::vector<ProgramCode>& pool, Nat t_max,
                       bool include_pause = false);

/// Pairs of distinct requirements sharing a blocked ID at the end of a stage.
std::vector<std::string> blocked_overlaps(const RequirementTrace& trace);

/// Entries whose conjecture enumerates (at `depth`) a set of another ID.
std::vector<std::string> same_id_violations(const Registry& registry,
                                            const LearnerTable& table, Nat depth);

}  // namespace limitlearn

#endif  // LIMITLEARN_PRIORITY_H_
