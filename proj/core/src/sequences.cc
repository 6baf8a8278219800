#include "limitlearn/sequences.h"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace limitlearn {
namespace {

using U128 = unsigned __int128;
using I128 = __int128;

constexpr U128 kU128Max = ~U128{0};
// Differences above this magnitude are tracked by sign only.
constexpr I128 kSmallDiff = I128{1} << 40;

std::optional<U128> pair128(std::optional<U128> a, Nat second) {
  if (!a) return std::nullopt;
  const U128 b = second;
  if (*a > kU128Max - b) return std::nullopt;
  const U128 s = *a + b;
  if (s >= (U128{1} << 64)) return std::nullopt;
  const U128 tri = (s * (s + 1)) / 2;
  if (tri > kU128Max - b - 1) return std::nullopt;
  return tri + b + 1;
}

std::vector<std::optional<U128>> prefix_codes(const Sequence& seq) {
  std::vector<std::optional<U128>> codes(seq.size() + 1);
  codes[0] = U128{0};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    codes[i + 1] = pair128(codes[i], seq[i].rank() + 1);
  }
  return codes;
}

struct Diff {
  bool big = false;
  int sign = 0;
  I128 value = 0;
};

Diff diff_of(U128 x, U128 y) {
  if (x >= y) {
    const U128 d = x - y;
    if (d > static_cast<U128>(kSmallDiff)) return {true, 1, 0};
    return {false, d == 0 ? 0 : 1, static_cast<I128>(d)};
  }
  const U128 d = y - x;
  if (d > static_cast<U128>(kSmallDiff)) return {true, -1, 0};
  return {false, -1, -static_cast<I128>(d)};
}

void check_codable(const Sequence& seq) {
  for (Elem x : seq) {
    if (!x.is_pause() && x.value() > kMaxCodableDatum) {
      throw PreconditionError("datum too large for sequence coding");
    }
  }
}

}  // namespace

std::string to_string(const NatSet& set) {
  std::string out = "{";
  bool first = true;
  for (Nat x : set) {
    if (!first) out += ",";
    out += std::to_string(x);
    first = false;
  }
  return out + "}";
}

NatSet content(const Sequence& seq) {
  NatSet out;
  for (Elem x : seq) {
    if (!x.is_pause()) out.insert(x.value());
  }
  return out;
}

Sequence make_sequence(std::initializer_list<Nat> data) {
  Sequence out;
  out.reserve(data.size());
  for (Nat x : data) out.push_back(Elem::datum(x));
  return out;
}

Sequence concat(const Sequence& a, const Sequence& b) {
  Sequence out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Sequence append(Sequence seq, Elem x) {
  seq.push_back(x);
  return seq;
}

bool is_prefix(const Sequence& prefix, const Sequence& seq) {
  return prefix.size() <= seq.size() &&
         std::equal(prefix.begin(), prefix.end(), seq.begin());
}

Sequence parse_sequence(std::string_view text) {
  Sequence out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (token == "#") {
      out.push_back(kPause);
    } else {
      std::size_t used = 0;
      unsigned long long value = 0;
      try {
        value = std::stoull(token, &used);
      } catch (const std::exception&) {
        throw PreconditionError("bad sequence element: " + token);
      }
      if (used != token.size()) {
        throw PreconditionError("bad sequence element: " + token);
      }
      out.push_back(Elem::datum(value));
    }
    token.clear();
  };
  for (char c : text) {
    if (c == '<' || c == '>' || c == ',' ||
        std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return out;
}

std::string to_string(Elem x) {
  return x.is_pause() ? std::string("#") : std::to_string(x.value());
}

std::string to_string(const Sequence& seq) {
  std::string out = "<";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ",";
    out += to_string(seq[i]);
  }
  return out + ">";
}

BigNat cantor_pair(const BigNat& a, const BigNat& b) {
  const BigNat s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<BigNat, BigNat> cantor_unpair(const BigNat& z) {
  BigNat w = (boost::multiprecision::sqrt(BigNat(8 * z + 1)) - 1) / 2;
  const BigNat tri = w * (w + 1) / 2;
  const BigNat y = z - tri;
  return {w - y, y};
}

BigNat encode_seq(const Sequence& seq) {
  check_codable(seq);
  BigNat code = 0;
  for (Elem x : seq) code = cantor_pair(code, BigNat(x.rank() + 1)) + 1;
  return code;
}

std::optional<BigNat> encode_seq_bounded(const Sequence& seq,
                                         std::size_t max_bits) {
  check_codable(seq);
  BigNat code = 0;
  for (Elem x : seq) {
    code = cantor_pair(code, BigNat(x.rank() + 1)) + 1;
    if (code != 0 && boost::multiprecision::msb(code) + 1 > max_bits) {
      return std::nullopt;
    }
  }
  return code;
}

std::optional<Sequence> decode_seq(const BigNat& code) {
  Sequence reversed;
  BigNat current = code;
  while (current != 0) {
    auto [parent, second] = cantor_unpair(current - 1);
    if (second == 0) return std::nullopt;
    const BigNat rank = second - 1;
    if (rank == 0) {
      reversed.push_back(kPause);
    } else {
      if (rank - 1 > kMaxCodableDatum) return std::nullopt;
      reversed.push_back(Elem::datum(static_cast<Nat>(rank - 1)));
    }
    current = parent;
  }
  return Sequence(reversed.rbegin(), reversed.rend());
}

std::strong_ordering compare_codes(const Sequence& a, const Sequence& b) {
  if (a == b) return std::strong_ordering::equal;
  check_codable(a);
  check_codable(b);
  const auto ca = prefix_codes(a);
  const auto cb = prefix_codes(b);
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t m = std::min(na, nb);

  // Level 0 compares the unmatched leading part of the longer sequence with λ.
  Diff diff;
  {
    const auto& x = ca[na - m];
    const auto& y = cb[nb - m];
    if (x && y) {
      diff = diff_of(*x, *y);
    } else {
      diff = {true, x ? -1 : 1, 0};
    }
  }
  // Each level appends one more element to both sides. When both codes fit in
  // 128 bits the difference is exact; otherwise the Cantor sums decide.
  for (std::size_t level = 1; level <= m; ++level) {
    const std::size_t ia = na - m + level;
    const std::size_t ib = nb - m + level;
    if (ca[ia] && cb[ib]) {
      diff = diff_of(*ca[ia], *cb[ib]);
      continue;
    }
    if (diff.big) continue;
    const I128 ra = static_cast<I128>(a[ia - 1].rank()) + 1;
    const I128 rb = static_cast<I128>(b[ib - 1].rank()) + 1;
    const I128 sum_diff = diff.value + (ra - rb);
    if (sum_diff == 0) {
      const I128 v = ra - rb;
      diff = {false, v == 0 ? 0 : (v > 0 ? 1 : -1), v};
    } else {
      diff = {true, sum_diff > 0 ? 1 : -1, 0};
    }
  }
  if (diff.sign < 0) return std::strong_ordering::less;
  if (diff.sign > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::vector<Elem> alphabet_of(const NatSet& data, bool include_pause) {
  std::vector<Elem> out;
  if (include_pause) out.push_back(kPause);
  for (Nat x : data) out.push_back(Elem::datum(x));
  return out;
}

std::vector<Sequence> enumerate_sequences(const std::vector<Elem>& alphabet,
                                          std::size_t max_len) {
  std::vector<Sequence> out;
  out.push_back({});
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len && !alphabet.empty(); ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (Elem x : alphabet) {
        Sequence next = out[i];
        next.push_back(x);
        out.push_back(std::move(next));
      }
    }
    level_begin = level_end;
  }
  std::sort(out.begin(), out.end(), CodeLess{});
  return out;
}

std::vector<Sequence> enumerate_seq_leq(Nat t, bool include_pause) {
  NatSet data;
  for (Nat x = 0; x <= t; ++x) data.insert(x);
  return enumerate_sequences(alphabet_of(data, include_pause),
                             static_cast<std::size_t>(t));
}

CodeOrderSearch::CodeOrderSearch(Sequence root, std::vector<Elem> alphabet,
                                 std::size_t max_extension)
    : root_len_(root.size()),
      alphabet_(std::move(alphabet)),
      max_extension_(max_extension) {
  frontier_.push(std::move(root));
}

std::optional<Sequence> CodeOrderSearch::next() {
  if (frontier_.empty()) return std::nullopt;
  Sequence top = frontier_.top();
  frontier_.pop();
  if (top.size() - root_len_ < max_extension_) {
    for (Elem x : alphabet_) frontier_.push(append(top, x));
  }
  return top;
}

std::strong_ordering compare_set_codes(const NatSet& a, const NatSet& b) {
  auto ia = a.rbegin();
  auto ib = b.rbegin();
  while (ia != a.rend() && ib != b.rend()) {
    if (*ia != *ib) {
      return *ia > *ib ? std::strong_ordering::greater
                       : std::strong_ordering::less;
    }
    ++ia;
    ++ib;
  }
  if (ia != a.rend()) return std::strong_ordering::greater;
  if (ib != b.rend()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

BigNat set_code(const NatSet& set) {
  BigNat code = 0;
  for (Nat x : set) boost::multiprecision::bit_set(code, static_cast<unsigned>(x));
  return code;
}

NatSet decode_set(const BigNat& code) {
  NatSet out;
  if (code == 0) return out;
  const unsigned top = boost::multiprecision::msb(code);
  for (unsigned i = 0; i <= top; ++i) {
    if (boost::multiprecision::bit_test(code, i)) out.insert(i);
  }
  return out;
}

std::vector<NatSet> subsets_of(const NatSet& set) {
  if (set.size() > 24) throw PreconditionError("set too large to expand");
  const std::vector<Nat> elems(set.begin(), set.end());
  const std::size_t count = std::size_t{1} << elems.size();
  std::vector<NatSet> out;
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    NatSet subset;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (mask & (std::size_t{1} << i)) subset.insert(elems[i]);
    }
    out.push_back(std::move(subset));
  }
  return out;
}

bool is_subset(const NatSet& a, const NatSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace limitlearn
