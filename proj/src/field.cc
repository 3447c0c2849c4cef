#include "bipoly/field.h"

#include <array>
#include <bit>
#include <string>

#include "bipoly/error.h"

namespace bipoly {

std::string_view ErrcName(Errc code) {
  switch (code) {
    case Errc::kInvalidParams: return "InvalidParams";
    case Errc::kZeroInverse: return "ZeroInverse";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kInvalidOrder: return "InvalidOrder";
    case Errc::kIndivisibleDimensions: return "IndivisibleDimensions";
    case Errc::kFieldTooSmall: return "FieldTooSmall";
    case Errc::kNotEnoughResponses: return "NotEnoughResponses";
    case Errc::kOrderViolation: return "OrderViolation";
    case Errc::kDecodeSingular: return "DecodeSingular";
    case Errc::kNonIntegerBound: return "NonIntegerBound";
    case Errc::kBudgetTooSmall: return "BudgetTooSmall";
    case Errc::kDuplicatePoints: return "DuplicatePoints";
    case Errc::kTooLargeToEnumerate: return "TooLargeToEnumerate";
    case Errc::kUnsupportedRegime: return "UnsupportedRegime";
    case Errc::kParse: return "ParseError";
    case Errc::kFormat: return "FormatError";
  }
  return "Unknown";
}

namespace {

u64 MulMod(u64 a, u64 b, u64 n) { return static_cast<u64>((static_cast<u128>(a) * b) % n); }

u64 PowMod(u64 base, u64 exp, u64 n) {
  u64 result = 1 % n;
  base %= n;
  while (exp != 0) {
    if (exp & 1) result = MulMod(result, base, n);
    base = MulMod(base, base, n);
    exp >>= 1;
  }
  return result;
}

}  // namespace

// Deterministic for all 64-bit n with this witness set.
bool IsPrime(u64 n) {
  if (n < 2) return false;
  constexpr std::array<u64, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kWitnesses) {
    u64 x = PowMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = MulMod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(u64 q) : q_(q) {
  if (q >= kMaxOrder) {
    throw Error(Errc::kInvalidParams, "field order q=" + std::to_string(q) + " must be below 2^62");
  }
  if (!IsPrime(q)) {
    throw Error(Errc::kInvalidParams, "field order q=" + std::to_string(q) + " is not prime");
  }
}

FieldElement PrimeField::from_int(std::int64_t v) const noexcept {
  if (v >= 0) return from_uint(static_cast<u64>(v));
  // Magnitude of INT64_MIN does not fit in int64, go through unsigned.
  u64 mag = static_cast<u64>(-(v + 1)) + 1;
  return neg(from_uint(mag));
}

FieldElement PrimeField::pow(FieldElement base, u64 exp) const noexcept {
  return FieldElement{PowMod(base.value, exp, q_)};
}

FieldElement PrimeField::inv(FieldElement a) const {
  if (a.value == 0) throw Error(Errc::kZeroInverse, "zero has no multiplicative inverse");
  // Extended Euclid on signed 128-bit to avoid sign juggling.
  __int128 t = 0, new_t = 1;
  __int128 r = q_, new_r = a.value;
  while (new_r != 0) {
    __int128 quotient = r / new_r;
    __int128 tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += q_;
  return FieldElement{static_cast<u64>(t)};
}

FieldElement PrimeField::falling_factorial(u64 a, u64 b) const noexcept {
  if (b > a) return zero();
  FieldElement acc = one();
  for (u64 k = 0; k < b; ++k) acc = mul(acc, from_uint(a - k));
  return acc;
}

unsigned PrimeField::element_bits() const noexcept {
  return static_cast<unsigned>(std::bit_width(q_ - 1));
}

}  // namespace bipoly
