#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "ideal_moments/errors.hpp"

namespace ideal_moments {

__extension__ typedef __int128 Int128;

inline constexpr Int128 kInt128Max =
    static_cast<Int128>((static_cast<unsigned __int128>(1) << 127) - 1);
inline constexpr Int128 kInt128Min = -kInt128Max - 1;

std::string to_string(Int128 value);
Int128 parse_int128(std::string_view text);

inline Int128 checked_add(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("128-bit addition overflow");
  return out;
}

inline Int128 checked_mul(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("128-bit multiplication overflow");
  return out;
}

inline std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("64-bit norm overflow");
  return out;
}

inline Int128 checked_pow(Int128 base, unsigned exponent) {
  Int128 result = 1;
  for (unsigned i = 0; i < exponent; ++i) result = checked_mul(result, base);
  return result;
}

inline double to_double(Int128 value) { return static_cast<double>(value); }

}  // namespace ideal_moments
