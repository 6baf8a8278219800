#include "limitlearn/value.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace limitlearn {
namespace {

void check_size(const BigNat& n) {
  if (n != 0 && boost::multiprecision::msb(n) + 1 > Value::kMaxBits) {
    throw std::length_error("value too large to materialise");
  }
}

}  // namespace

Value Value::of_sequence(Sequence seq) {
  const std::size_t len = seq.size();
  return Value(SeqRef{std::make_shared<const Sequence>(std::move(seq)), len});
}

Value Value::pair(const Value& a, const Value& b) {
  const auto* na = std::get_if<BigNat>(&a.rep_);
  const auto* nb = std::get_if<BigNat>(&b.rep_);
  if (na && nb) {
    BigNat out = cantor_pair(*na, *nb);
    check_size(out);
    return Value(std::move(out));
  }
  return Value(PairRef{std::make_shared<const Value>(a),
                       std::make_shared<const Value>(b)});
}

bool Value::is_zero() const {
  if (const auto* n = std::get_if<BigNat>(&rep_)) return *n == 0;
  if (const auto* s = std::get_if<SeqRef>(&rep_)) return s->len == 0;
  const auto& p = std::get<PairRef>(rep_);
  return p.a->is_zero() && p.b->is_zero();
}

Value Value::succ() const {
  if (const auto* p = std::get_if<PairRef>(&rep_)) {
    // pair(code(σ[k]), rank(σ(k)) + 1) + 1 is code(σ[k+1]).
    if (const auto* s = std::get_if<SeqRef>(&p->a->rep_)) {
      if (s->len < s->seq->size()) {
        const Value expected((*s->seq)[s->len].rank() + 1);
        if (*p->b == expected) return Value(SeqRef{s->seq, s->len + 1});
      }
    }
  }
  BigNat out = materialize() + 1;
  check_size(out);
  return Value(std::move(out));
}

Value Value::pred() const {
  if (const auto* s = std::get_if<SeqRef>(&rep_)) {
    if (s->len == 0) return Value(Nat{0});
    const Elem last = (*s->seq)[s->len - 1];
    return Value(PairRef{std::make_shared<const Value>(Value(SeqRef{s->seq, s->len - 1})),
                         std::make_shared<const Value>(Value(last.rank() + 1))});
  }
  const BigNat n = materialize();
  return Value(n == 0 ? BigNat(0) : BigNat(n - 1));
}

Value Value::first() const {
  if (const auto* p = std::get_if<PairRef>(&rep_)) return *p->a;
  return Value(cantor_unpair(materialize()).first);
}

Value Value::second() const {
  if (const auto* p = std::get_if<PairRef>(&rep_)) return *p->b;
  return Value(cantor_unpair(materialize()).second);
}

BigNat Value::materialize() const {
  if (const auto* n = std::get_if<BigNat>(&rep_)) return *n;
  if (const auto* s = std::get_if<SeqRef>(&rep_)) {
    const Sequence prefix(s->seq->begin(), s->seq->begin() + s->len);
    auto code = encode_seq_bounded(prefix, kMaxBits);
    if (!code) throw std::length_error("value too large to materialise");
    return *code;
  }
  const auto& p = std::get<PairRef>(rep_);
  BigNat out = cantor_pair(p.a->materialize(), p.b->materialize());
  check_size(out);
  return out;
}

std::optional<Nat> Value::to_nat() const {
  if (const auto* s = std::get_if<SeqRef>(&rep_)) {
    const Sequence prefix(s->seq->begin(), s->seq->begin() + s->len);
    auto code = encode_seq_bounded(prefix, 64);
    if (!code) return std::nullopt;
    return static_cast<Nat>(*code);
  }
  BigNat n;
  try {
    n = materialize();
  } catch (const std::length_error&) {
    return std::nullopt;
  }
  if (n > std::numeric_limits<Nat>::max()) return std::nullopt;
  return static_cast<Nat>(n);
}

std::optional<Sequence> Value::as_sequence() const {
  if (const auto* s = std::get_if<SeqRef>(&rep_)) {
    return Sequence(s->seq->begin(), s->seq->begin() + s->len);
  }
  try {
    return decode_seq(materialize());
  } catch (const std::length_error&) {
    return std::nullopt;
  }
}

bool operator==(const Value& a, const Value& b) {
  const auto* sa = std::get_if<Value::SeqRef>(&a.rep_);
  const auto* sb = std::get_if<Value::SeqRef>(&b.rep_);
  if (sa && sb) {
    return sa->len == sb->len &&
           std::equal(sa->seq->begin(), sa->seq->begin() + sa->len,
                      sb->seq->begin());
  }
  return a.materialize() == b.materialize();
}

std::string Value::to_string() const {
  if (const auto* s = std::get_if<SeqRef>(&rep_)) {
    const Sequence prefix(s->seq->begin(), s->seq->begin() + s->len);
    return "code" + limitlearn::to_string(prefix);
  }
  if (const auto* p = std::get_if<PairRef>(&rep_)) {
    return "pair(" + p->a->to_string() + "," + p->b->to_string() + ")";
  }
  return std::get<BigNat>(rep_).str();
}

}  // namespace limitlearn
