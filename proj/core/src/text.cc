#include "limitlearn/text.h"

#include <istream>
#include <ostream>

namespace limitlearn {

Nat DeterministicRng::below(Nat bound) {
  if (bound == 0) throw PreconditionError("empty range");
  const Nat limit = ~Nat{0} - (~Nat{0} % bound);
  Nat draw = engine_();
  while (draw >= limit) draw = engine_();
  return draw % bound;
}

TextSource TextSource::canonical(const SetShape& language, std::string label) {
  TextSource text;
  text.kind_ = Kind::kCanonical;
  text.label_ = label.empty() ? "canonical" : std::move(label);
  text.target_ = language;
  text.canonical_tail_ = true;
  return text;
}

TextSource TextSource::scripted(Sequence script, std::string label) {
  TextSource text;
  text.kind_ = Kind::kScripted;
  text.label_ = label.empty() ? "scripted" : std::move(label);
  text.target_ = SetShape::finite(content(script));
  text.head_ = std::move(script);
  return text;
}

TextSource TextSource::seeded(const SetShape& language, const NatSet& required,
                              std::size_t window, Nat seed, std::string label) {
  if (required.size() > window) {
    throw PreconditionError("text window too short to cover the language");
  }
  for (Nat x : required) {
    if (!language.contains(x)) {
      throw PreconditionError("required element outside the language");
    }
  }
  DeterministicRng rng(seed);
  Sequence head(window, kPause);
  std::vector<std::size_t> positions(window);
  for (std::size_t i = 0; i < window; ++i) positions[i] = i;
  // Partial Fisher-Yates: the first |required| positions receive the
  // required elements.
  const std::vector<Nat> pool(required.begin(), required.end());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const std::size_t j = i + rng.below(window - i);
    std::swap(positions[i], positions[j]);
    head[positions[i]] = Elem::datum(pool[i]);
  }
  for (std::size_t i = pool.size(); i < window; ++i) {
    const std::size_t pos = positions[i];
    if (pool.empty() || rng.below(3) == 0) {
      head[pos] = kPause;
    } else {
      head[pos] = Elem::datum(pool[rng.below(pool.size())]);
    }
  }
  TextSource text;
  text.kind_ = Kind::kSeeded;
  text.label_ = label.empty() ? "seeded-" + std::to_string(seed) : std::move(label);
  text.target_ = language;
  text.head_ = std::move(head);
  text.canonical_tail_ = true;
  return text;
}

Sequence TextSource::prefix(std::size_t n) const {
  Sequence out;
  out.reserve(n);
  for (std::size_t i = 0; i < n && i < head_.size(); ++i) out.push_back(head_[i]);
  if (out.size() == n) return out;
  if (!canonical_tail_) {
    out.resize(n, kPause);
    return out;
  }
  if (target_.is_finite()) {
    const NatSet members = target_.finite_elements();
    auto it = members.begin();
    while (out.size() < n) {
      if (it != members.end()) {
        out.push_back(Elem::datum(*it++));
      } else {
        out.push_back(kPause);
      }
    }
    return out;
  }
  for (Nat x = 0; out.size() < n; ++x) {
    if (target_.contains(x)) out.push_back(Elem::datum(x));
  }
  return out;
}

Elem TextSource::at(std::size_t i) const { return prefix(i + 1).back(); }

TextSource canonical_text(const LanguageDescr& language) {
  const auto shape = language.shape();
  if (!shape) {
    throw PreconditionError("canonical text needs a decidable language");
  }
  return TextSource::canonical(*shape, "canonical");
}

std::vector<TextSource> sample_texts(const SetShape& language, Nat universe,
                                     std::size_t count, std::size_t len,
                                     Nat seed) {
  const NatSet required = language.is_finite()
                              ? language.finite_elements()
                              : language.elements_upto(universe);
  if (count > 0 && required.size() > len) {
    throw PreconditionError("text length " + std::to_string(len) +
                            " cannot cover " + std::to_string(required.size()) +
                            " required elements");
  }
  std::vector<TextSource> out;
  out.reserve(count);
  DeterministicRng seeds(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const Nat text_seed = seeds.next();
    out.push_back(TextSource::seeded(language, required, len, text_seed,
                                     "seeded-" + std::to_string(i)));
  }
  return out;
}

std::vector<TextSource> sample_texts(const LanguageDescr& language,
                                     std::size_t count, std::size_t len,
                                     Nat seed) {
  const auto shape = language.shape();
  if (!shape) throw PreconditionError("sampling needs a decidable language");
  return sample_texts(*shape, language.universe, count, len, seed);
}

void write_text_script(std::ostream& out, const Sequence& seq) {
  for (Elem x : seq) out << to_string(x) << '\n';
}

Sequence read_text_script(std::istream& in) {
  Sequence out;
  std::string line;
  while (std::getline(in, line)) {
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(begin, end - begin + 1);
    const Sequence parsed = parse_sequence(token);
    if (parsed.size() != 1) {
      throw PreconditionError("text script lines hold one element: " + line);
    }
    out.push_back(parsed.front());
  }
  return out;
}

}  // namespace limitlearn
