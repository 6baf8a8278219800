#ifndef LIMITLEARN_VALUE_H_
#define LIMITLEARN_VALUE_H_

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "limitlearn/sequences.h"
#include "limitlearn/types.h"

namespace limitlearn {

/// A natural number as seen by the interpreter. Sequence codes and pairs built
/// from them are kept symbolic: the code of a long sequence has far too many
/// digits to write down, yet programs can still take it apart with
/// pred/first/second. Anything else forces the number to be materialised.
class Value {
 public:
  Value() : rep_(BigNat(0)) {}
  Value(Nat n) : rep_(BigNat(n)) {}  // NOLINT: naturals convert implicitly
  explicit Value(BigNat n) : rep_(std::move(n)) {}

  /// encode_seq(seq), held symbolically.
  static Value of_sequence(Sequence seq);
  static Value pair(const Value& a, const Value& b);

  bool is_zero() const;
  Value succ() const;
  Value pred() const;
  Value first() const;
  Value second() const;

  /// Exact numeric value. Throws std::length_error beyond kMaxBits.
  BigNat materialize() const;
  std::optional<Nat> to_nat() const;
  /// The sequence this value codes, if any.
  std::optional<Sequence> as_sequence() const;

  friend bool operator==(const Value& a, const Value& b);
  std::string to_string() const;

  static constexpr std::size_t kMaxBits = std::size_t{1} << 20;

 private:
  struct SeqRef {
    std::shared_ptr<const Sequence> seq;
    std::size_t len = 0;
  };
  struct PairRef {
    std::shared_ptr<const Value> a;
    std::shared_ptr<const Value> b;
  };

  explicit Value(SeqRef ref) : rep_(std::move(ref)) {}
  explicit Value(PairRef ref) : rep_(std::move(ref)) {}

  std::variant<BigNat, SeqRef, PairRef> rep_;
};

}  // namespace limitlearn

#endif  // LIMITLEARN_VALUE_H_
