#include "ideal_moments/int128.hpp"

#include <algorithm>

namespace ideal_moments {

std::string to_string(Int128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  // Work in unsigned to handle kInt128Min.
  unsigned __int128 magnitude = negative ? static_cast<unsigned __int128>(-(value + 1)) + 1
                                         : static_cast<unsigned __int128>(value);
  std::string digits;
  while (magnitude > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(magnitude % 10)));
    magnitude /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Int128 parse_int128(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("parse_int128: empty string");
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw std::invalid_argument("parse_int128: no digits");
  Int128 value = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') {
      throw std::invalid_argument("parse_int128: bad digit in '" + std::string(text) + "'");
    }
    value = checked_add(checked_mul(value, 10), negative ? -(c - '0') : (c - '0'));
  }
  return value;
}

}  // namespace ideal_moments
