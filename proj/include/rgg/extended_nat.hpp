#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <string>

namespace rgg {

// Natural number extended with +infinity.
//
// Arithmetic follows the conventions used throughout the solvers:
//   inf - inf = inf,  inf - n = inf,  min over an empty set = inf.
// Finite subtraction requires lhs >= rhs (regret is a difference br <= u).
class ExtendedNat {
public:
  constexpr ExtendedNat() : value_(0) {}
  constexpr ExtendedNat(std::uint64_t v) : value_(v) { assert(v != kInfValue); }

  static constexpr ExtendedNat infinity() {
    ExtendedNat e;
    e.value_ = kInfValue;
    return e;
  }

  constexpr bool is_infinite() const { return value_ == kInfValue; }
  constexpr bool is_finite() const { return value_ != kInfValue; }

  constexpr std::uint64_t finite_value() const {
    assert(is_finite());
    return value_;
  }

  // inf compares greater than every finite value.
  constexpr auto operator<=>(const ExtendedNat&) const = default;

  friend constexpr ExtendedNat operator+(ExtendedNat a, ExtendedNat b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtendedNat(a.value_ + b.value_);
  }

  // a - b with a >= b, or a infinite (inf - anything = inf).
  friend constexpr ExtendedNat operator-(ExtendedNat a, ExtendedNat b) {
    if (a.is_infinite()) return infinity();
    assert(b.is_finite() && b.value_ <= a.value_);
    return ExtendedNat(a.value_ - b.value_);
  }

  friend constexpr ExtendedNat min(ExtendedNat a, ExtendedNat b) {
    return a < b ? a : b;
  }
  friend constexpr ExtendedNat max(ExtendedNat a, ExtendedNat b) {
    return a < b ? b : a;
  }

  std::string to_string() const {
    return is_infinite() ? "inf" : std::to_string(value_);
  }

private:
  static constexpr std::uint64_t kInfValue =
      std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value_;
};

inline constexpr ExtendedNat kInf = ExtendedNat::infinity();

}  // namespace rgg
