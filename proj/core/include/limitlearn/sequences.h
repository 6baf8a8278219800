#ifndef LIMITLEARN_SEQUENCES_H_
#define LIMITLEARN_SEQUENCES_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "limitlearn/types.h"

namespace limitlearn {

/// A text element: either a datum or the pause symbol `#`.
class Elem {
 public:
  static constexpr Elem pause() { return Elem(true, 0); }
  static constexpr Elem datum(Nat value) { return Elem(false, value); }

  constexpr bool is_pause() const { return pause_; }
  constexpr Nat value() const { return value_; }
  /// Pause ranks 0 and datum n ranks n + 1.
  constexpr Nat rank() const { return pause_ ? 0 : value_ + 1; }

  friend constexpr bool operator==(Elem a, Elem b) {
    return a.rank() == b.rank();
  }
  friend constexpr auto operator<=>(Elem a, Elem b) {
    return a.rank() <=> b.rank();
  }

 private:
  constexpr Elem(bool pause, Nat value) : pause_(pause), value_(value) {}

  bool pause_;
  Nat value_;
};

inline constexpr Elem kPause = Elem::pause();

using Sequence = std::vector<Elem>;

/// Largest datum accepted by the sequence coding functions.
inline constexpr Nat kMaxCodableDatum = (Nat{1} << 32) - 1;

NatSet content(const Sequence& seq);

/// Builds a sequence from data; useful in tests and examples.
Sequence make_sequence(std::initializer_list<Nat> data);
Sequence concat(const Sequence& a, const Sequence& b);
Sequence append(Sequence seq, Elem x);
bool is_prefix(const Sequence& prefix, const Sequence& seq);

/// Parses "<1,#,3>", "1 # 3" or "1,#,3" (brackets optional).
Sequence parse_sequence(std::string_view text);
std::string to_string(const Sequence& seq);
std::string to_string(Elem x);

BigNat cantor_pair(const BigNat& a, const BigNat& b);
std::pair<BigNat, BigNat> cantor_unpair(const BigNat& z);

/// code(λ) = 0 and code(σ⋄x) = pair(code(σ), rank(x) + 1) + 1.
BigNat encode_seq(const Sequence& seq);
/// Same as encode_seq, or nullopt once the code needs more than max_bits bits.
std::optional<BigNat> encode_seq_bounded(const Sequence& seq,
                                         std::size_t max_bits);
/// Inverse of encode_seq; nullopt for naturals outside its image.
std::optional<Sequence> decode_seq(const BigNat& code);

/// Compares encode_seq(a) with encode_seq(b) without materialising the codes,
/// which grow doubly exponentially in the length.
std::strong_ordering compare_codes(const Sequence& a, const Sequence& b);

struct CodeLess {
  bool operator()(const Sequence& a, const Sequence& b) const {
    return compare_codes(a, b) < 0;
  }
};

/// All sequences of length ≤ t over {0,…,t} (plus `#` when include_pause),
/// sorted by code.
std::vector<Sequence> enumerate_seq_leq(Nat t, bool include_pause);

/// All sequences of length ≤ max_len over `alphabet`, sorted by code.
std::vector<Sequence> enumerate_sequences(const std::vector<Elem>& alphabet,
                                          std::size_t max_len);

/// Alphabet made of the given data, optionally with the pause symbol.
std::vector<Elem> alphabet_of(const NatSet& data, bool include_pause);

/// Lazily enumerates root⋄ρ in increasing code order for ρ over `alphabet`
/// with |ρ| ≤ max_extension. Relies on extensions having larger codes.
class CodeOrderSearch {
 public:
  CodeOrderSearch(Sequence root, std::vector<Elem> alphabet,
                  std::size_t max_extension);

  std::optional<Sequence> next();

 private:
  struct Greater {
    bool operator()(const Sequence& a, const Sequence& b) const {
      return compare_codes(a, b) > 0;
    }
  };

  std::size_t root_len_;
  std::vector<Elem> alphabet_;
  std::size_t max_extension_;
  std::priority_queue<Sequence, std::vector<Sequence>, Greater> frontier_;
};

/// Canonical finite-set code Σ 2^x, compared without materialising it.
std::strong_ordering compare_set_codes(const NatSet& a, const NatSet& b);
BigNat set_code(const NatSet& set);
NatSet decode_set(const BigNat& code);

/// All subsets of `set`, sorted by canonical set code.
std::vector<NatSet> subsets_of(const NatSet& set);

bool is_subset(const NatSet& a, const NatSet& b);

}  // namespace limitlearn

#endif  // LIMITLEARN_SEQUENCES_H_
