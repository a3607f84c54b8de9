#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bilateral/distribution.hpp"
#include "bilateral/rational.hpp"

namespace bilateral {

/// Optimal take-it-or-leave-it price per type of the offering party.
struct PriceTable {
  enum class Side { Seller, Buyer };
  Side side;
  std::vector<int> prices;

  int H() const { return static_cast<int>(prices.size()) - 1; }
  int operator[](std::size_t t) const { return prices[t]; }
  friend bool operator==(const PriceTable&, const PriceTable&) = default;
};

/// How optimal prices are located.
///
/// Full scans every candidate price for every type (quadratic). Monotone
/// exploits that the selected argmax is non-decreasing in the type and
/// recursively narrows each scan window (O(H log H)). Both produce the same
/// table on valid distributions, including the tie rules.
enum class PriceScan { Monotone, Full };

struct GftReport {
  ExactRational fb;
  ExactRational so;
  ExactRational bo;
  ExactRational ro;
  /// fb / ro; empty when ro = 0.
  std::optional<ExactRational> ratio;

  /// fb / max(so, bo); empty when both are 0.
  std::optional<ExactRational> best_single_offer_ratio() const;

  friend bool operator==(const GftReport&, const GftReport&) = default;
};

/// Seller of type s posts the highest price p in [s, H] maximizing
/// (p - s) * SF(p). Profits are compared as exact integers.
PriceTable optimal_seller_prices(const DiscreteDistribution& sf_b, PriceScan scan = PriceScan::Monotone);

/// Buyer of type b posts the lowest price p in [0, b] maximizing
/// (b - p) * CDF(p), switching only on strict improvement from an initial
/// (price b, profit 0). A buyer with no profitable offer posts b.
PriceTable optimal_buyer_prices(const DiscreteDistribution& cdf_s, PriceScan scan = PriceScan::Monotone);

// Raw GFT numerators over kScale^2. These are the exact integer sums that
// the ExactRational wrappers below reduce.
Wide first_best_numerator(const Pmf& pmf_s, const Pmf& pmf_b);
Wide seller_offering_numerator(const Pmf& pmf_s, const Pmf& pmf_b, const PriceTable& prices);
Wide buyer_offering_numerator(const Pmf& pmf_s, const Pmf& pmf_b, const PriceTable& prices);

ExactRational first_best_gft(const Pmf& pmf_s, const Pmf& pmf_b);
ExactRational seller_offering_gft(const Pmf& pmf_s, const Pmf& pmf_b, const PriceTable& prices);
ExactRational buyer_offering_gft(const Pmf& pmf_s, const Pmf& pmf_b, const PriceTable& prices);

/// Builds a report from the four raw numerators (ro from so + bo).
GftReport make_report(Wide fb, Wide so, Wide bo);

struct EvaluateOptions {
  PriceScan scan = PriceScan::Monotone;
};

/// Validates both tables, then computes all four GFT values and the ratio.
/// Throws std::invalid_argument on mismatched H, wrong kinds, or
/// validation violations.
GftReport evaluate(const DiscreteDistribution& cdf_s, const DiscreteDistribution& sf_b,
                   EvaluateOptions options = {});

/// Plain-text report: exact fractions followed by a decimal block.
std::string format_report(const GftReport& report, int digits);

}  // namespace bilateral
