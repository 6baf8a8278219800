#include "limitlearn/oracle.h"

namespace limitlearn {

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::kFalse || b == Tri::kFalse) return Tri::kFalse;
  if (a == Tri::kUnknown || b == Tri::kUnknown) return Tri::kUnknown;
  return Tri::kTrue;
}

Tri tri_not(Tri a) {
  if (a == Tri::kUnknown) return a;
  return a == Tri::kTrue ? Tri::kFalse : Tri::kTrue;
}

LanguageOracle::LanguageOracle(const Registry& registry, Nat universe, Nat depth,
                               bool fallback)
    : registry_(registry), universe_(universe), depth_(depth), fallback_(fallback) {}

void LanguageOracle::declare(ProgramCode e, const LanguageDescr& language) {
  std::lock_guard lock(mu_);
  declared_[e] = language;
  cache_.erase(e);
}

Resolution LanguageOracle::resolve(ProgramCode e) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(e); it != cache_.end()) return it->second;
  }
  Resolution r;
  std::optional<LanguageDescr> declared;
  {
    std::lock_guard lock(mu_);
    if (auto it = declared_.find(e); it != declared_.end()) declared = it->second;
  }
  if (declared && declared->decidable()) {
    r.source = Resolution::Source::kDeclared;
    r.shape = declared->shape();
  } else {
    const ProgramCode target = declared ? declared->program : e;
    if (auto shape = registry_.describe(target, depth_)) {
      r.source = Resolution::Source::kDescribed;
      r.shape = shape;
    } else if (!fallback_) {
      throw PreconditionError("no descriptor for hypothesis " + to_string(e) +
                              " and enumeration fallback is disabled");
    } else {
      const SetShape window = SetShape::below(universe_ + 1);
      const SetShape shallow =
          SetShape::finite(registry_.w_bounded(target, depth_)).intersect(window);
      const SetShape deep =
          SetShape::finite(registry_.w_bounded(target, 2 * depth_)).intersect(window);
      if (shallow == deep) {
        r.source = Resolution::Source::kEnumerated;
        r.shape = deep;
        r.bounded = true;
      }
    }
  }
  std::lock_guard lock(mu_);
  cache_.emplace(e, r);
  return r;
}

std::optional<std::pair<SetShape, SetShape>> LanguageOracle::pair_of(
    const Resolution& a, const Resolution& b, bool* bounded) const {
  if (!a.shape || !b.shape) return std::nullopt;
  *bounded = a.bounded || b.bounded;
  if (!*bounded) return std::make_pair(*a.shape, *b.shape);
  std::lock_guard lock(mu_);
  used_bounded_ = true;
  const SetShape window = SetShape::below(universe_ + 1);
  return std::make_pair(a.shape->intersect(window), b.shape->intersect(window));
}

Tri LanguageOracle::equal(ProgramCode a, ProgramCode b) const {
  if (a == b) return Tri::kTrue;
  bool bounded = false;
  auto shapes = pair_of(resolve(a), resolve(b), &bounded);
  if (!shapes) return Tri::kUnknown;
  return tri(shapes->first == shapes->second);
}

Tri LanguageOracle::subset(ProgramCode a, ProgramCode b) const {
  if (a == b) return Tri::kTrue;
  bool bounded = false;
  auto shapes = pair_of(resolve(a), resolve(b), &bounded);
  if (!shapes) return Tri::kUnknown;
  return tri(shapes->first.subset_of(shapes->second));
}

Tri LanguageOracle::proper_subset(ProgramCode a, ProgramCode b) const {
  if (a == b) return Tri::kFalse;
  bool bounded = false;
  auto shapes = pair_of(resolve(a), resolve(b), &bounded);
  if (!shapes) return Tri::kUnknown;
  return tri(shapes->first.proper_subset_of(shapes->second));
}

Tri LanguageOracle::is_finite(ProgramCode e) const {
  const Resolution r = resolve(e);
  if (!r.shape || r.bounded) return Tri::kUnknown;
  return tri(r.shape->is_finite());
}

Tri LanguageOracle::contains_all(ProgramCode e, const NatSet& d) const {
  const Resolution r = resolve(e);
  if (!r.shape) return Tri::kUnknown;
  for (Nat x : d) {
    if (r.bounded && x > universe_) return Tri::kUnknown;
    if (!r.shape->contains(x)) return Tri::kFalse;
  }
  if (r.bounded) {
    std::lock_guard lock(mu_);
    used_bounded_ = true;
  }
  return Tri::kTrue;
}

Tri LanguageOracle::equals_target(ProgramCode e, const SetShape& target) const {
  Resolution t{Resolution::Source::kDeclared, target, false};
  bool bounded = false;
  auto shapes = pair_of(resolve(e), t, &bounded);
  if (!shapes) return Tri::kUnknown;
  return tri(shapes->first == shapes->second);
}

Tri LanguageOracle::within_target(ProgramCode e, const SetShape& target) const {
  Resolution t{Resolution::Source::kDeclared, target, false};
  bool bounded = false;
  auto shapes = pair_of(resolve(e), t, &bounded);
  if (!shapes) return Tri::kUnknown;
  return tri(shapes->first.subset_of(shapes->second));
}

Tri LanguageOracle::properly_contains_target(ProgramCode e,
                                             const SetShape& target) const {
  Resolution t{Resolution::Source::kDeclared, target, false};
  bool bounded = false;
  auto shapes = pair_of(resolve(e), t, &bounded);
  if (!shapes) return Tri::kUnknown;
  return tri(shapes->second.proper_subset_of(shapes->first));
}

Tri LanguageOracle::subset_on(ProgramCode a, ProgramCode b, const SetShape& target,
                              std::optional<Nat>* witness) const {
  bool bounded = false;
  auto shapes = pair_of(resolve(a), resolve(b), &bounded);
  if (!shapes) return Tri::kUnknown;
  SetShape scope = target;
  if (bounded) scope = scope.intersect(SetShape::below(universe_ + 1));
  const SetShape missing = shapes->first.intersect(scope).minus(shapes->second);
  if (missing == SetShape::empty()) return Tri::kTrue;
  if (witness != nullptr) *witness = missing.complement().least_absent();
  return Tri::kFalse;
}

bool LanguageOracle::used_bounded() const {
  std::lock_guard lock(mu_);
  return used_bounded_;
}

}  // namespace limitlearn
