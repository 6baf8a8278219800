#include "limitlearn/language.h"

#include <numeric>

namespace limitlearn {

SetShape::SetShape() = default;

SetShape SetShape::finite(const NatSet& elements) {
  SetShape out;
  if (!elements.empty()) {
    out.threshold_ = *elements.rbegin() + 1;
    out.head_.assign(out.threshold_, false);
    for (Nat x : elements) out.head_[x] = true;
  }
  out.normalize();
  return out;
}

SetShape SetShape::cofinite(const NatSet& excluded) {
  return finite(excluded).complement();
}

SetShape SetShape::naturals() { return empty().complement(); }

SetShape SetShape::evens() { return residue_class(0, 2); }

SetShape SetShape::residue_class(Nat residue, Nat modulus) {
  if (modulus == 0) throw PreconditionError("modulus must be positive");
  SetShape out;
  out.period_ = modulus;
  out.tail_.assign(modulus, false);
  out.tail_[residue % modulus] = true;
  out.normalize();
  return out;
}

SetShape SetShape::below(Nat n) {
  SetShape out;
  out.threshold_ = n;
  out.head_.assign(n, true);
  out.normalize();
  return out;
}

bool SetShape::contains(Nat x) const {
  if (x < threshold_) return head_[x];
  return tail_[x % period_];
}

bool SetShape::is_finite() const {
  for (bool b : tail_) {
    if (b) return false;
  }
  return true;
}

NatSet SetShape::elements_upto(Nat bound) const {
  NatSet out;
  for (Nat x = 0; x <= bound; ++x) {
    if (contains(x)) out.insert(x);
  }
  return out;
}

NatSet SetShape::finite_elements() const {
  if (!is_finite()) throw PreconditionError("set is infinite");
  NatSet out;
  for (Nat x = 0; x < threshold_; ++x) {
    if (head_[x]) out.insert(x);
  }
  return out;
}

template <typename Op>
SetShape SetShape::combine(const SetShape& a, const SetShape& b, Op op) {
  SetShape out;
  out.threshold_ = std::max(a.threshold_, b.threshold_);
  out.period_ = std::lcm(a.period_, b.period_);
  out.head_.resize(out.threshold_);
  for (Nat x = 0; x < out.threshold_; ++x) {
    out.head_[x] = op(a.contains(x), b.contains(x));
  }
  out.tail_.resize(out.period_);
  const Nat t = out.threshold_;
  const Nat p = out.period_;
  for (Nat r = 0; r < p; ++r) {
    const Nat x = t + ((r + p - t % p) % p);
    out.tail_[r] = op(a.contains(x), b.contains(x));
  }
  out.normalize();
  return out;
}

void SetShape::normalize() {
  for (Nat d = 1; d < period_; ++d) {
    if (period_ % d != 0) continue;
    bool periodic = true;
    for (Nat i = d; i < period_ && periodic; ++i) {
      periodic = tail_[i] == tail_[i % d];
    }
    if (periodic) {
      tail_.resize(d);
      period_ = d;
      break;
    }
  }
  while (threshold_ > 0 &&
         head_[threshold_ - 1] == tail_[(threshold_ - 1) % period_]) {
    --threshold_;
  }
  head_.resize(threshold_);
}

SetShape SetShape::unite(const SetShape& other) const {
  return combine(*this, other, [](bool a, bool b) { return a || b; });
}

SetShape SetShape::intersect(const SetShape& other) const {
  return combine(*this, other, [](bool a, bool b) { return a && b; });
}

SetShape SetShape::minus(const SetShape& other) const {
  return combine(*this, other, [](bool a, bool b) { return a && !b; });
}

SetShape SetShape::complement() const {
  SetShape out = *this;
  out.head_.flip();
  out.tail_.flip();
  out.normalize();
  return out;
}

bool SetShape::subset_of(const SetShape& other) const {
  return minus(other) == SetShape();
}

bool SetShape::proper_subset_of(const SetShape& other) const {
  return subset_of(other) && !(*this == other);
}

bool SetShape::finite_variant_of(const SetShape& other) const {
  return minus(other).is_finite() && other.minus(*this).is_finite();
}

std::optional<Nat> SetShape::least_absent() const {
  for (Nat x = 0; x < threshold_ + period_; ++x) {
    if (!contains(x)) return x;
  }
  return std::nullopt;
}

std::string SetShape::to_string() const {
  if (is_finite()) return limitlearn::to_string(finite_elements());
  // Base pattern from the periodic tail, then finite exceptions below it.
  SetShape base;
  base.period_ = period_;
  base.tail_ = tail_;
  base.normalize();
  std::string out;
  if (base == naturals()) {
    out = "N";
  } else if (base == evens()) {
    out = "2N";
  } else if (base == residue_class(1, 2)) {
    out = "2N+1";
  } else {
    out = "{x mod " + std::to_string(period_) + " in ";
    NatSet residues;
    for (Nat r = 0; r < period_; ++r) {
      if (tail_[r]) residues.insert(r);
    }
    out += limitlearn::to_string(residues) + "}";
  }
  const SetShape added = minus(base);
  const SetShape removed = base.minus(*this);
  if (!(added == SetShape())) out += "+" + added.to_string();
  if (!(removed == SetShape())) out += "\\" + removed.to_string();
  return out;
}

LanguageDescr LanguageDescr::finite(NatSet elements, Nat universe) {
  LanguageDescr d;
  d.kind = Kind::kFinite;
  d.elements = std::move(elements);
  d.universe = universe;
  return d;
}

LanguageDescr LanguageDescr::cofinite(NatSet excluded, Nat universe) {
  LanguageDescr d;
  d.kind = Kind::kCofinite;
  d.elements = std::move(excluded);
  d.universe = universe;
  return d;
}

LanguageDescr LanguageDescr::evens(Nat universe) {
  LanguageDescr d;
  d.kind = Kind::kEvens;
  d.universe = universe;
  return d;
}

LanguageDescr LanguageDescr::all_naturals(Nat universe) {
  LanguageDescr d;
  d.kind = Kind::kAllNaturals;
  d.universe = universe;
  return d;
}

LanguageDescr LanguageDescr::ce(ProgramCode program, Nat universe) {
  LanguageDescr d;
  d.kind = Kind::kCe;
  d.program = program;
  d.universe = universe;
  return d;
}

std::optional<SetShape> LanguageDescr::shape() const {
  switch (kind) {
    case Kind::kFinite:
      return SetShape::finite(elements);
    case Kind::kCofinite:
      return SetShape::cofinite(elements);
    case Kind::kEvens:
      return SetShape::evens();
    case Kind::kAllNaturals:
      return SetShape::naturals();
    case Kind::kCe:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string kind_name(LanguageDescr::Kind kind) {
  switch (kind) {
    case LanguageDescr::Kind::kFinite:
      return "Finite";
    case LanguageDescr::Kind::kCofinite:
      return "Cofinite";
    case LanguageDescr::Kind::kEvens:
      return "Evens";
    case LanguageDescr::Kind::kAllNaturals:
      return "AllNaturals";
    case LanguageDescr::Kind::kCe:
      return "Ce";
  }
  return "?";
}

std::string LanguageDescr::to_string() const {
  switch (kind) {
    case Kind::kFinite:
    case Kind::kCofinite:
      return kind_name(kind) + limitlearn::to_string(elements);
    case Kind::kEvens:
    case Kind::kAllNaturals:
      return kind_name(kind);
    case Kind::kCe:
      return "Ce(" + limitlearn::to_string(program) + ")";
  }
  return "?";
}

}  // namespace limitlearn
