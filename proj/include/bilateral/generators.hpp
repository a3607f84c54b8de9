#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bilateral/distribution.hpp"

namespace bilateral {

/// Parameters of the seller family
///
///   F(m) = w * z^a(z) + (1 - w) * z^a2,   z = (m + 1) / (H + 1),
///   a(z) = max(1e-9, a1_base + a1_amp * sin(a1_freq * pi * z)),
///
/// with the raw values clamped to [0, 1] and made non-decreasing by a
/// running maximum before rounding.
struct SellerFamilyParams {
  double w = 0.20;
  double a1_base = 0.15;
  double a1_amp = 0.05;
  double a1_freq = 2.0;
  double a2 = 4.0;
  int H = kMaxSupport;

  /// The worst-case instance: w=0.20, a1=0.15+0.05 sin(2 pi z), a2=4, H=20000.
  static SellerFamilyParams worst_case() { return {}; }

  /// Empty when the parameters are usable; otherwise a reason per failure.
  std::vector<std::string> problems() const;
  void check() const;

  friend bool operator==(const SellerFamilyParams&, const SellerFamilyParams&) = default;
};

/// content_hash() of the worst-case seller table in the text file format.
/// A mismatch means the platform's sin/pow drifted from the pinned build.
inline constexpr std::uint64_t kWorstCaseSellerHash = 0x0675c07caabaade4ULL;

/// Margin the exponent floor must keep: a1_base - a1_amp >= kExponentFloor.
inline constexpr double kExponentFloor = 1e-9;

/// Pr[b >= m] = 1/m for m >= 1, Pr[b >= 0] = 1.
DiscreteDistribution equal_revenue_buyer(int H);

/// Pr[s <= m] = (m + 1) / (H + 1).
DiscreteDistribution uniform_seller(int H);

/// All mass at v, expressed as a CDF or SF according to kind.
DiscreteDistribution point_mass(int v, Kind kind, int H);

/// Real-valued CDF before rounding; exposed for golden-value tests.
std::vector<double> modulated_power_mixture_real(const SellerFamilyParams& p);

DiscreteDistribution modulated_power_mixture_seller(const SellerFamilyParams& p,
                                                    RealPrecision precision = RealPrecision::Binary64);

}  // namespace bilateral
