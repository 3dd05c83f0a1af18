#include "schemadig/ratio.hpp"

#include <cctype>
#include <numeric>

#include "schemadig/errors.hpp"

namespace schemadig {

Ratio Ratio::parse_decimal(const std::string& text) {
  if (text.empty()) throw InputError("empty rational literal");

  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::uint64_t num = 0, den = 0;
    try {
      num = std::stoull(text.substr(0, slash));
      den = std::stoull(text.substr(slash + 1));
    } catch (const std::exception&) {
      throw InputError("malformed rational literal: " + text);
    }
    if (den == 0) throw InputError("zero denominator: " + text);
    return Ratio{num, den};
  }

  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool seen_digit = false;
  bool seen_dot = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_dot) throw InputError("malformed decimal literal: " + text);
      seen_dot = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InputError("malformed decimal literal: " + text);
    }
    if (num > (UINT64_MAX - 9) / 10 || (seen_dot && den > UINT64_MAX / 10)) {
      throw InputError("decimal literal out of range: " + text);
    }
    num = num * 10 + static_cast<std::uint64_t>(c - '0');
    if (seen_dot) den *= 10;
    seen_digit = true;
  }
  if (!seen_digit) throw InputError("malformed decimal literal: " + text);
  std::uint64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Ratio{num, den};
}

}  // namespace schemadig
