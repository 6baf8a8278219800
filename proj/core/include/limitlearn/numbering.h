#ifndef LIMITLEARN_NUMBERING_H_
#define LIMITLEARN_NUMBERING_H_

#include <deque>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "limitlearn/language.h"
#include "limitlearn/sequences.h"
#include "limitlearn/types.h"
#include "limitlearn/value.h"

namespace limitlearn {

/// Converged(value, steps) or FuelExhausted.
struct EvalOutcome {
  bool converged = false;
  Value value;
  Nat steps = 0;

  static EvalOutcome done(Value value, Nat steps) {
    return {true, std::move(value), steps};
  }
  static EvalOutcome exhausted(Nat fuel) { return {false, Value(), fuel}; }
};

/// Result of a host primitive run with a fuel budget. An empty value means the
/// primitive did not halt within the budget.
struct HostResult {
  std::optional<Value> value;
  Nat cost = 1;
};

/// One stage of an accumulated enumeration.
struct StageResult {
  NatSet members;
  Nat cost = 1;
};

using HostFn = std::function<HostResult(const Value& input, Nat fuel)>;
using StageFn = std::function<StageResult(Nat t)>;
/// Exact description of W for a program, computed with quantifiers over
/// stages cut at `horizon`. Empty when no exact description is available.
using Describer = std::function<std::optional<SetShape>(Nat horizon)>;

enum class Op : std::uint8_t {
  kDiverge,
  kConst,
  kArg,
  kSucc,
  kPred,
  kPair,
  kFirst,
  kSecond,
  kIfZero,
  kCompose,
  kSearch,
  kUniversal,
  kPad,
  kHost,
};

std::string op_name(Op op);
std::optional<Op> parse_op(const std::string& name);

struct ProgramNode {
  Op op = Op::kDiverge;
  std::vector<Nat> children;
  /// Constant value (kConst), pad value (kPad) or host key (kHost).
  std::string payload;
};

/// One line of a registry dump.
struct DumpRecord {
  Nat id = 0;
  ProgramNode node;
};

/// The toy numbering: an append-only, hash-consed registry of expression
/// trees and host primitives with a step-counting interpreter.
///
/// Code 0 is the everywhere-divergent program. Registration is serialized;
/// evaluation may run concurrently with registration.
class Registry {
 public:
  Registry();
  ~Registry();
  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;

  EvalOutcome eval(ProgramCode e, const Value& x, Nat fuel) const;
  /// W_e^t = {x ≤ t : Φ_e(x) ≤ t}.
  NatSet w_bounded(ProgramCode e, Nat t) const;
  /// Exact W_e where known: builtin constructors, pads, and accumulated
  /// programs registered with a describer.
  std::optional<SetShape> describe(ProgramCode e, Nat horizon) const;

  ProgramCode diverge() const { return ProgramCode{0}; }
  ProgramCode constant(const BigNat& value);
  ProgramCode argument();
  ProgramCode succ(ProgramCode e);
  ProgramCode pred(ProgramCode e);
  ProgramCode pair(ProgramCode a, ProgramCode b);
  ProgramCode first(ProgramCode e);
  ProgramCode second(ProgramCode e);
  ProgramCode if_zero(ProgramCode test, ProgramCode then_branch,
                      ProgramCode else_branch);
  /// x ↦ f(g(x)).
  ProgramCode compose(ProgramCode f, ProgramCode g);
  /// x ↦ least n with body(⟨x, n⟩) = 0.
  ProgramCode search(ProgramCode body);
  /// x ↦ φ_{code(x)}(input(x)).
  ProgramCode universal(ProgramCode code, ProgramCode input);

  /// φ_{smn(e,a)}(b) = φ_e(⟨a,b⟩).
  ProgramCode smn(ProgramCode e, Nat a);
  /// Same function as e, one extra step per call; injective in (e, n).
  ProgramCode pad(ProgramCode e, const BigNat& n);
  /// pad(e, encode_seq(seq)); long sequences are keyed by the sequence itself.
  ProgramCode pad(ProgramCode e, const Sequence& seq);

  /// W = D; x ∈ D halts after 1 + (position of x in D) steps.
  ProgramCode ind(const NatSet& d);
  /// W = ℕ ∖ {n}.
  ProgramCode cofinite(Nat n);
  ProgramCode naturals();
  /// 2ℕ as the accumulation of t ↦ {even x ≤ t}.
  ProgramCode evens();
  /// A transparent program for an arbitrary shape; `key` names it uniquely.
  ProgramCode language(const std::string& key, const SetShape& shape);
  /// W = ⋃_t stage(t), semidecided by dovetailing over t.
  ProgramCode accumulate(const std::string& key, StageFn stage,
                         Describer describer = {});
  /// W = W_e ∖ {y}.
  ProgramCode remove_element(ProgramCode e, Nat y);
  /// Registers a host primitive under a unique key; re-registering a key
  /// returns the existing code.
  ProgramCode host(const std::string& key, HostFn fn, Describer describer = {});
  /// A program computing a learner on sequence codes.
  ProgramCode learner_program(
      const std::string& key,
      std::function<std::optional<ProgramCode>(const Sequence&)> fn,
      Nat cost = 1);

  bool registered(ProgramCode e) const;
  Nat size() const;
  std::optional<ProgramNode> node(ProgramCode e) const;
  /// Registered codes in id order.
  std::vector<ProgramCode> codes() const;

  /// One line per code: id, constructor, child ids, payload.
  void dump(std::ostream& out) const;
  static std::vector<DumpRecord> parse_dump(std::istream& in);
  /// Rebuilds a dump into this (fresh) registry. Host keys are resolved by
  /// `resolve`; unresolved hosts become divergent placeholders.
  using HostResolver = std::function<std::optional<std::pair<HostFn, Describer>>(
      const std::string& key)>;
  void replay(const std::vector<DumpRecord>& records,
              const HostResolver& resolve);

 private:
  struct Entry;
  class Machine;

  ProgramCode intern(ProgramNode node, HostFn fn = {}, Describer describer = {});
  const Entry* lookup(Nat id) const;

  mutable std::shared_mutex mu_;
  std::deque<Entry> entries_;
  std::unordered_map<std::string, Nat> index_;
};

}  // namespace limitlearn

#endif  // LIMITLEARN_NUMBERING_H_
