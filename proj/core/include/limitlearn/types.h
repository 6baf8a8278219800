#ifndef LIMITLEARN_TYPES_H_
#define LIMITLEARN_TYPES_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace limitlearn {

using Nat = std::uint64_t;
using BigNat = boost::multiprecision::cpp_int;
using NatSet = std::set<Nat>;

/// Names a program of the toy numbering. Every natural is a valid code;
/// codes that were never registered behave as the everywhere-divergent program.
struct ProgramCode {
  Nat id = 0;

  friend auto operator<=>(const ProgramCode&, const ProgramCode&) = default;
};

inline std::string to_string(ProgramCode code) {
  return "#" + std::to_string(code.id);
}

/// Raised when a caller violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string to_string(const NatSet& set);

}  // namespace limitlearn

template <>
struct std::hash<limitlearn::ProgramCode> {
  std::size_t operator()(limitlearn::ProgramCode code) const noexcept {
    return std::hash<limitlearn::Nat>{}(code.id);
  }
};

#endif  // LIMITLEARN_TYPES_H_
