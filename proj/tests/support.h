#ifndef LIMITLEARN_TESTS_SUPPORT_H_
#define LIMITLEARN_TESTS_SUPPORT_H_

#include <vector>

#include "limitlearn/learner.h"
#include "limitlearn/numbering.h"
#include "limitlearn/sequences.h"
#include "limitlearn/text.h"

namespace limitlearn::testing {

/// Random expression trees over the registry constructors.
inline ProgramCode random_program(Registry& reg, DeterministicRng& rng, int depth) {
  auto small_set = [&] {
    NatSet d;
    const Nat n = rng.below(4);
    while (d.size() < n) d.insert(rng.below(8));
    return d;
  };
  if (depth <= 0 || rng.below(4) == 0) {
    switch (rng.below(7)) {
      case 0:
        return reg.constant(BigNat(rng.below(6)));
      case 1:
        return reg.argument();
      case 2:
        return reg.ind(small_set());
      case 3:
        return reg.cofinite(rng.below(6));
      case 4:
        return reg.naturals();
      case 5:
        return reg.evens();
      default:
        return reg.diverge();
    }
  }
  auto sub = [&] { return random_program(reg, rng, depth - 1); };
  switch (rng.below(11)) {
    case 0:
      return reg.succ(sub());
    case 1:
      return reg.pred(sub());
    case 2:
      return reg.first(sub());
    case 3:
      return reg.second(sub());
    case 4:
      return reg.pad(sub(), BigNat(rng.below(5)));
    case 5:
      return reg.remove_element(sub(), rng.below(6));
    case 6:
      return reg.smn(sub(), rng.below(5));
    case 7: {
      const ProgramCode a = sub();
      return reg.pair(a, sub());
    }
    case 8: {
      const ProgramCode a = sub();
      return reg.compose(a, sub());
    }
    case 9: {
      const ProgramCode a = sub();
      const ProgramCode b = sub();
      return reg.if_zero(a, b, sub());
    }
    default:
      return reg.search(sub());
  }
}

/// All subsets of {0,…,max_elem} with at most max_size elements, in set-code
/// order.
inline std::vector<NatSet> small_sets(Nat max_elem, std::size_t max_size) {
  NatSet universe;
  for (Nat x = 0; x <= max_elem; ++x) universe.insert(x);
  std::vector<NatSet> out;
  for (NatSet& d : subsets_of(universe)) {
    if (d.size() <= max_size) out.push_back(std::move(d));
  }
  return out;
}

inline bool same_outcome(const EvalOutcome& a, const EvalOutcome& b) {
  if (a.converged != b.converged) return false;
  return !a.converged || a.value == b.value;
}

}  // namespace limitlearn::testing

#endif  // LIMITLEARN_TESTS_SUPPORT_H_
