#include "et/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace et {
namespace {

void strip_trailing_zeros(std::string& s) {
  if (s.find('.') == std::string::npos) return;
  auto last = s.find_last_not_of('0');
  if (s[last] == '.') --last;
  s.erase(last + 1);
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) return "0";
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";

  const double ax = std::fabs(x);
  char buf[64];
  if (ax >= 1e6 || ax < 1e-4) {
    std::snprintf(buf, sizeof buf, "%.11e", x);
    std::string s(buf);
    const auto epos = s.find('e');
    std::string mantissa = s.substr(0, epos);
    const int exponent = std::atoi(s.c_str() + epos + 1);
    strip_trailing_zeros(mantissa);
    std::snprintf(buf, sizeof buf, "e%+03d", exponent);
    return mantissa + buf;
  }

  // 12 significant digits in fixed notation; int_digits can be <= 0 for
  // values below one, adding the leading zeros back as decimals.
  const int int_digits = static_cast<int>(std::floor(std::log10(ax))) + 1;
  int decimals = 12 - int_digits;
  if (decimals < 0) decimals = 0;
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  std::string s(buf);
  strip_trailing_zeros(s);
  return s;
}

double format_roundtrip(double x) {
  if (std::isnan(x) || std::isinf(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

}  // namespace et
