#pragma once

// Test-only helpers: random valid instances and a brute-force evaluator that
// shares no code with the library's evaluators.

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "bilateral/distribution.hpp"
#include "bilateral/rational.hpp"

namespace bilateral::testing {

struct Instance {
  DiscreteDistribution seller;
  DiscreteDistribution buyer;
};

/// Random monotone tables. With `coarse`, values are multiples of kScale/4
/// so exact profit ties and zero-mass points are common.
inline Instance random_instance(std::mt19937_64& rng, int max_h, bool coarse) {
  std::uniform_int_distribution<int> h_dist(1, max_h);
  const int H = h_dist(rng);
  auto draw = [&] {
    if (coarse) return static_cast<std::int64_t>(std::uniform_int_distribution<int>(0, 4)(rng)) * (kScale / 4);
    return std::uniform_int_distribution<std::int64_t>(0, kScale)(rng);
  };
  std::vector<std::int64_t> cdf(static_cast<std::size_t>(H) + 1), sf(static_cast<std::size_t>(H) + 1);
  for (auto& v : cdf) v = draw();
  for (auto& v : sf) v = draw();
  std::sort(cdf.begin(), cdf.end());
  std::sort(sf.begin(), sf.end(), std::greater<>());
  cdf.back() = kScale;
  sf.front() = kScale;
  return {DiscreteDistribution(Kind::SellerCdf, std::move(cdf)), DiscreteDistribution(Kind::BuyerSf, std::move(sf))};
}

struct BruteForce {
  ExactRational fb, so, bo, ro;
  std::optional<ExactRational> ratio;
  std::vector<int> seller_prices;
  std::vector<int> buyer_prices;
};

/// Enumerates every (s, b) pair and every candidate price with rational
/// probabilities derived from point masses.
inline BruteForce brute_force(const DiscreteDistribution& cdf_s, const DiscreteDistribution& sf_b) {
  const int H = cdf_s.H();
  std::vector<ExactRational> ps(H + 1), pb(H + 1);
  for (int m = 0; m <= H; ++m) {
    const std::int64_t below = m == 0 ? 0 : cdf_s[m - 1];
    ps[m] = ExactRational(cdf_s[m] - below, kScale);
    const std::int64_t above = m == H ? 0 : sf_b[m + 1];
    pb[m] = ExactRational(sf_b[m] - above, kScale);
  }
  auto prob_b_at_least = [&](int p) {
    ExactRational total;
    for (int b = p; b <= H; ++b) total = total + pb[b];
    return total;
  };
  auto prob_s_at_most = [&](int p) {
    ExactRational total;
    for (int s = 0; s <= p; ++s) total = total + ps[s];
    return total;
  };

  BruteForce out;
  out.seller_prices.resize(H + 1);
  out.buyer_prices.resize(H + 1);
  for (int s = 0; s <= H; ++s) {
    // Highest price among the maximizers.
    ExactRational best = ExactRational::integer(-1);
    for (int p = s; p <= H; ++p) {
      const ExactRational profit = ExactRational::integer(p - s) * prob_b_at_least(p);
      if (profit >= best) {
        best = profit;
        out.seller_prices[s] = p;
      }
    }
  }
  for (int b = 0; b <= H; ++b) {
    // Lowest maximizer when some offer is profitable, otherwise b.
    ExactRational best;
    out.buyer_prices[b] = b;
    for (int p = 0; p <= b; ++p) {
      const ExactRational profit = ExactRational::integer(b - p) * prob_s_at_most(p);
      if (profit > best) {
        best = profit;
        out.buyer_prices[b] = p;
      }
    }
  }
  for (int s = 0; s <= H; ++s) {
    for (int b = 0; b <= H; ++b) {
      const ExactRational weight = ps[s] * pb[b];
      const ExactRational gain = weight * ExactRational::integer(b - s);
      if (b >= s) out.fb = out.fb + gain;
      if (b >= out.seller_prices[s]) out.so = out.so + gain;
      if (s <= out.buyer_prices[b]) out.bo = out.bo + gain;
    }
  }
  out.ro = (out.so + out.bo) / ExactRational::integer(2);
  if (out.ro != ExactRational()) out.ratio = out.fb / out.ro;
  return out;
}

/// Table literal in kScale units.
inline DiscreteDistribution table_of(Kind kind, std::initializer_list<std::int64_t> scaled) {
  return DiscreteDistribution(kind, std::vector<std::int64_t>(scaled));
}

}  // namespace bilateral::testing
