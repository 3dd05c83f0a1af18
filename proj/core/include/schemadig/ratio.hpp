#pragma once

#include <cstdint>
#include <string>

namespace schemadig {

// Exact non-negative rational. Confidence values must compare exactly
// (the 100%-confidence filter is an equality test on counts), so no
// floating point anywhere near them.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return static_cast<unsigned __int128>(a.num) * b.den ==
           static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator<(const Ratio& a, const Ratio& b) {
    return static_cast<unsigned __int128>(a.num) * b.den <
           static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
  friend bool operator>=(const Ratio& a, const Ratio& b) { return !(a < b); }
  friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }

  bool is_one() const { return num == den && den != 0; }
  double to_double() const { return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0; }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  // Parses "1", "0.9", "9/10", ".75" into an exact rational.
  static Ratio parse_decimal(const std::string& text);
};

}  // namespace schemadig
