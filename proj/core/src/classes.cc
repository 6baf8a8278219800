#include "limitlearn/classes.h"

#include <ostream>

namespace limitlearn {

void FamilyDescr::declare(LanguageOracle& oracle) const {
  for (const FamilyMember& m : members) oracle.declare(m.code, m.language);
}

std::vector<SetShape> FamilyDescr::shapes() const {
  std::vector<SetShape> out;
  for (const FamilyMember& m : members) out.push_back(*m.language.shape());
  return out;
}

void FamilyDescr::write_manifest(std::ostream& out) const {
  for (const FamilyMember& m : members) {
    out << name << '\t' << m.name << '\t' << kind_name(m.language.kind) << '\t'
        << m.language.to_string() << '\t' << m.code.id << '\n';
  }
}

namespace {

NatSet smon_member(Nat k) {
  NatSet out;
  for (Nat i = 0; i <= k; ++i) out.insert(2 * i);
  out.insert(2 * k + 1);
  return out;
}

NatSet mon_member(Nat k) {
  NatSet out;
  for (Nat i = 0; i <= 2 * k + 1; ++i) out.insert(i);
  return out;
}

using MemberFn = NatSet (*)(Nat);

SeparatedFamily separator(Registry& registry, Nat k_max, const std::string& name,
                          MemberFn member, bool least_odd) {
  FamilyDescr family{name, {}, k_max};
  const ProgramCode evens = registry.evens();
  family.members.push_back({"2N", LanguageDescr::evens(), evens});
  for (Nat k = 0; k <= k_max; ++k) {
    const NatSet l = member(k);
    family.members.push_back(
        {"L" + std::to_string(k), LanguageDescr::finite(l), registry.ind(l)});
  }
  Registry* reg = &registry;
  Learner learner = Learner::set_driven(
      name, [reg, evens, member, least_odd](const NatSet& d) -> Conjecture {
        std::optional<Nat> pick;
        for (Nat x : d) {
          if (x % 2 == 0) continue;
          if (!pick || !least_odd) pick = x;
          if (least_odd) break;
        }
        if (!pick) return evens;
        return reg->ind(member((*pick - 1) / 2));
      });
  return {std::move(family), std::move(learner)};
}

}  // namespace

SeparatedFamily smon_separator(Registry& registry, Nat k_max) {
  return separator(registry, k_max, "smon_separator", smon_member, true);
}

SeparatedFamily mon_separator(Registry& registry, Nat k_max) {
  return separator(registry, k_max, "mon_separator", mon_member, false);
}

Learner maxprog_psd_learner(const Registry& registry, Nat fuel) {
  const Registry* reg = &registry;
  return Learner::partially_set_driven(
      "maxprog@" + std::to_string(fuel),
      [reg, fuel](const NatSet& d, Nat t) -> Conjecture {
        if (d.empty()) throw PreconditionError("maxprog learner needs nonempty data");
        const EvalOutcome r = reg->eval(ProgramCode{*d.rbegin()}, Value(t), fuel);
        if (!r.converged) return std::nullopt;
        auto n = r.value.to_nat();
        if (!n) return std::nullopt;
        return ProgramCode{*n};
      },
      0);
}

Learner finite_sets_learner(Registry& registry) {
  Registry* reg = &registry;
  return Learner::set_driven("finite_sets",
                             [reg](const NatSet& d) -> Conjecture { return reg->ind(d); });
}

}  // namespace limitlearn
