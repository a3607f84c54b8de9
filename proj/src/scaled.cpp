#include "bilateral/scaled.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>

namespace bilateral {

std::string to_string(Kind kind) {
  return kind == Kind::SellerCdf ? "seller_cdf" : "buyer_sf";
}

Kind kind_from_string(const std::string& text) {
  if (text == "seller_cdf") return Kind::SellerCdf;
  if (text == "buyer_sf") return Kind::BuyerSf;
  throw std::invalid_argument("unknown distribution kind: " + text);
}

std::int64_t round_scaled(double probability, RealPrecision precision) {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw std::invalid_argument("probability outside [0, 1]");
  }
  // The quotient is taken against the binary64 (or long double) literal
  // 1e-15 rather than multiplied by 1e15, matching the reference rounding.
  // nearbyint rounds half-to-even under the default rounding mode.
  if (std::fegetround() != FE_TONEAREST) {
    throw std::logic_error("floating-point rounding mode must be round-to-nearest");
  }
  double rounded = 0.0;
  if (precision == RealPrecision::Binary64) {
    constexpr double tolerance = 1e-15;
    rounded = std::nearbyint(probability / tolerance);
  } else {
    constexpr long double tolerance = 1e-15L;
    rounded = static_cast<double>(std::nearbyint(static_cast<long double>(probability) / tolerance));
  }
  return std::clamp(static_cast<std::int64_t>(rounded), std::int64_t{0}, kScale);
}

std::string wide_to_string(Wide value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
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

}  // namespace bilateral
