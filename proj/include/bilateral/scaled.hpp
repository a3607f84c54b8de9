#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bilateral {

/// Probabilities are stored as integer multiples of 1e-15.
inline constexpr std::int64_t kScale = 1'000'000'000'000'000;

/// Largest supported valuation domain {0..H}.
inline constexpr int kMaxSupport = 20000;

/// Accumulator for profit products and GFT sums. The largest sum is
/// bounded by kScale^2 * kMaxSupport ~ 2e34, well inside 2^127.
using Wide = __int128;

static_assert(static_cast<Wide>(kScale) * kScale * kMaxSupport * 4 > 0,
              "Wide must hold 4 * kScale^2 * kMaxSupport without overflow");

enum class Kind { SellerCdf, BuyerSf };

std::string to_string(Kind kind);
Kind kind_from_string(const std::string& text);

/// Strong type for a single probability in kScale units.
class ScaledProb {
 public:
  constexpr ScaledProb() = default;
  explicit ScaledProb(std::int64_t value) : value_(value) {
    if (value < 0 || value > kScale) {
      throw std::out_of_range("scaled probability outside [0, kScale]: " + std::to_string(value));
    }
  }

  constexpr std::int64_t value() const { return value_; }
  constexpr double to_real() const { return static_cast<double>(value_) / static_cast<double>(kScale); }

  friend constexpr bool operator==(ScaledProb, ScaledProb) = default;
  friend constexpr auto operator<=>(ScaledProb, ScaledProb) = default;

 private:
  std::int64_t value_ = 0;
};

/// How a real probability is divided by the rounding tolerance before
/// rounding half-to-even. Binary64 is the default; Extended repeats the
/// division in long double for sensitivity checks.
enum class RealPrecision { Binary64, Extended };

/// Round one real probability to the nearest multiple of 1e-15 (ties to even).
std::int64_t round_scaled(double probability, RealPrecision precision = RealPrecision::Binary64);

/// Decimal text for a 128-bit integer.
std::string wide_to_string(Wide value);

}  // namespace bilateral
