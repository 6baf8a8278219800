#ifndef LIMITLEARN_TEXT_H_
#define LIMITLEARN_TEXT_H_

#include <iosfwd>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "limitlearn/language.h"
#include "limitlearn/sequences.h"

namespace limitlearn {

/// A total text T : ℕ → ℕ ∪ {#}, available through finite prefixes.
class TextSource {
 public:
  enum class Kind { kCanonical, kScripted, kSeeded };

  /// Ascending enumeration of `language`, then pauses if it is finite.
  static TextSource canonical(const SetShape& language, std::string label = "");
  /// `script` followed by pauses forever.
  static TextSource scripted(Sequence script, std::string label = "");
  /// A seeded window of length `window` that contains every element of
  /// `required`, followed by the canonical enumeration of `language`.
  static TextSource seeded(const SetShape& language, const NatSet& required,
                           std::size_t window, Nat seed, std::string label = "");

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  /// content of the whole text.
  const SetShape& target() const { return target_; }

  Elem at(std::size_t i) const;
  /// T[n]: the first n elements.
  Sequence prefix(std::size_t n) const;

 private:
  TextSource() = default;

  Kind kind_ = Kind::kScripted;
  std::string label_;
  SetShape target_;
  Sequence head_;  // explicit leading part
  bool canonical_tail_ = false;
};

TextSource canonical_text(const LanguageDescr& language);

/// Deterministic-under-seed texts over `language`. Each window of length `len`
/// contains all of the language when it is finite, else all of it up to the
/// universe bound.
std::vector<TextSource> sample_texts(const LanguageDescr& language,
                                     std::size_t count, std::size_t len,
                                     Nat seed);
std::vector<TextSource> sample_texts(const SetShape& language, Nat universe,
                                     std::size_t count, std::size_t len,
                                     Nat seed);

/// One element per line, "#" for a pause.
void write_text_script(std::ostream& out, const Sequence& seq);
Sequence read_text_script(std::istream& in);

/// mt19937_64 with bounded draws done by rejection, so results do not depend
/// on the standard library's distribution implementations.
class DeterministicRng {
 public:
  explicit DeterministicRng(Nat seed) : engine_(seed) {}
  Nat next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  Nat below(Nat bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace limitlearn

#endif  // LIMITLEARN_TEXT_H_
