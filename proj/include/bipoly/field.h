#pragma once

#include <compare>
#include <cstdint>
#include <ostream>

namespace bipoly {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Canonical representative in [0, q). Only a PrimeField produces these from
// arbitrary integers, so the invariant holds as long as callers go through it.
struct FieldElement {
  u64 value = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

inline std::ostream& operator<<(std::ostream& os, FieldElement e) { return os << e.value; }

bool IsPrime(u64 n);

// Word-size prime field F_q with q < 2^62. Construction runs a deterministic
// Miller-Rabin test and throws Errc::kInvalidParams on a composite or
// out-of-range modulus.
class PrimeField {
 public:
  static constexpr u64 kMaxOrder = u64{1} << 62;

  explicit PrimeField(u64 q);

  u64 order() const noexcept { return q_; }

  FieldElement zero() const noexcept { return FieldElement{0}; }
  FieldElement one() const noexcept { return FieldElement{1}; }
  FieldElement from_uint(u64 v) const noexcept { return FieldElement{v % q_}; }
  FieldElement from_int(std::int64_t v) const noexcept;

  FieldElement add(FieldElement a, FieldElement b) const noexcept {
    u64 s = a.value + b.value;
    return FieldElement{s >= q_ ? s - q_ : s};
  }
  FieldElement sub(FieldElement a, FieldElement b) const noexcept {
    return FieldElement{a.value >= b.value ? a.value - b.value : a.value + q_ - b.value};
  }
  FieldElement neg(FieldElement a) const noexcept {
    return FieldElement{a.value == 0 ? 0 : q_ - a.value};
  }
  FieldElement mul(FieldElement a, FieldElement b) const noexcept {
    return FieldElement{static_cast<u64>((static_cast<u128>(a.value) * b.value) % q_)};
  }
  FieldElement pow(FieldElement base, u64 exp) const noexcept;

  // Throws Errc::kZeroInverse for a == 0.
  FieldElement inv(FieldElement a) const;

  // a * (a-1) * ... * (a-b+1), reduced mod q. Empty product (b == 0) is 1.
  FieldElement falling_factorial(u64 a, u64 b) const noexcept;

  // Number of bits needed to store one element: ceil(log2 q).
  unsigned element_bits() const noexcept;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  u64 q_;
};

}  // namespace bipoly
