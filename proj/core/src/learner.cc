#include "limitlearn/learner.h"

namespace limitlearn {

std::string interaction_name(Interaction op) {
  switch (op) {
    case Interaction::kG:
      return "G";
    case Interaction::kPsd:
      return "Psd";
    case Interaction::kSd:
      return "Sd";
  }
  return "?";
}

std::optional<Interaction> parse_interaction(const std::string& name) {
  if (name == "G") return Interaction::kG;
  if (name == "Psd") return Interaction::kPsd;
  if (name == "Sd") return Interaction::kSd;
  return std::nullopt;
}

Learner Learner::sequential(std::string name, SeqFn fn, unsigned properties) {
  Learner h;
  h.kind_ = Kind::kSequential;
  h.name_ = std::move(name);
  h.properties_ = properties;
  h.seq_ = std::move(fn);
  return h;
}

Learner Learner::partially_set_driven(std::string name, PsdFn fn,
                                      unsigned properties) {
  Learner h;
  h.kind_ = Kind::kPartiallySetDriven;
  h.name_ = std::move(name);
  h.properties_ = properties;
  h.psd_ = std::move(fn);
  return h;
}

Learner Learner::set_driven(std::string name, SdFn fn, unsigned properties) {
  Learner h;
  h.kind_ = Kind::kSetDriven;
  h.name_ = std::move(name);
  h.properties_ = properties;
  h.sd_ = std::move(fn);
  return h;
}

Learner Learner::program(const Registry& registry, ProgramCode e, Nat fuel) {
  Learner h;
  h.kind_ = Kind::kProgram;
  h.name_ = "program" + to_string(e) + "@" + std::to_string(fuel);
  h.code_ = e;
  const Registry* reg = &registry;
  h.seq_ = [reg, e, fuel](const Sequence& seq) -> Conjecture {
    const EvalOutcome r = reg->eval(e, Value::of_sequence(seq), fuel);
    if (!r.converged) return std::nullopt;
    auto n = r.value.to_nat();
    if (!n) return std::nullopt;
    return ProgramCode{*n};
  };
  return h;
}

Learner Learner::with_name(std::string name) const {
  Learner h = *this;
  h.name_ = std::move(name);
  return h;
}

Learner Learner::with_properties(unsigned properties) const {
  Learner h = *this;
  h.properties_ = properties;
  return h;
}

Conjecture Learner::operator()(const Sequence& seq) const {
  switch (kind_) {
    case Kind::kSequential:
    case Kind::kProgram:
      return seq_(seq);
    case Kind::kPartiallySetDriven:
      return psd_(content(seq), seq.size());
    case Kind::kSetDriven:
      return sd_(content(seq));
  }
  return std::nullopt;
}

Conjecture Learner::operator()(const NatSet& data, Nat steps) const {
  if (kind_ == Kind::kPartiallySetDriven) return psd_(data, steps);
  if (kind_ == Kind::kSetDriven) return sd_(data);
  throw PreconditionError("learner " + name_ + " has no partially set-driven view");
}

Conjecture Learner::operator()(const NatSet& data) const {
  if (kind_ == Kind::kSetDriven) return sd_(data);
  throw PreconditionError("learner " + name_ + " has no set-driven view");
}

HypothesisSequence run_interaction(Interaction op, const Learner& h,
                                   const TextSource& text, std::size_t n) {
  HypothesisSequence p;
  p.reserve(n);
  const Sequence prefix = text.prefix(n);
  Sequence seq;
  NatSet data;
  for (std::size_t i = 0; i < n; ++i) {
    switch (op) {
      case Interaction::kG:
        p.push_back(h(seq));
        break;
      case Interaction::kPsd:
        p.push_back(h(data, i));
        break;
      case Interaction::kSd:
        p.push_back(h(data));
        break;
    }
    if (i < prefix.size()) {
      seq.push_back(prefix[i]);
      if (!prefix[i].is_pause()) data.insert(prefix[i].value());
    }
  }
  return p;
}

std::vector<std::size_t> mind_changes(const HypothesisSequence& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i] != p[i - 1]) out.push_back(i);
  }
  return out;
}

std::string to_string(const HypothesisSequence& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ",";
    out += p[i] ? to_string(*p[i]) : "diverged";
  }
  return out + "]";
}

}  // namespace limitlearn
