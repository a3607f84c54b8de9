#pragma once

#include <cstdint>
#include <span>

#include "bilateral/distribution.hpp"
#include "bilateral/mechanisms.hpp"

namespace bilateral {

/// Quadratic evaluator that mirrors the reference evaluation loop by loop:
/// a double loop for first best, a full price scan per seller type (ties go
/// to the higher price) and per buyer type (strict improvement only), and
/// the halved sum for the random offerer. No validation is performed.
/// Throws std::out_of_range when H exceeds kMaxSupport.
GftReport reference_evaluate(const DiscreteDistribution& cdf_s, const DiscreteDistribution& sf_b);

/// Same as reference_evaluate, starting from real-valued tables that are
/// first rounded to multiples of 1e-15.
GftReport reference_evaluate_real(int H, std::span<const double> sf_b, std::span<const double> cdf_s);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct McReport {
  McEstimate fb;
  McEstimate so;
  McEstimate bo;
  McEstimate ro;
};

struct McOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Samples (s, b) by inverse transform over the scaled tables and plays the
/// first-best, seller-offering and buyer-offering rules; ro is scored per
/// sample as (so + bo) / 2.
///
/// Random source (version 1): samples are split into fixed blocks of
/// kMcBlockSize; block k draws from std::mt19937_64 seeded with
/// splitmix64(seed + k * 0x9e3779b97f4a7c15). A uniform integer in
/// [0, kScale) is drawn by rejection; the seller draw precedes the buyer
/// draw. Results do not depend on the thread count.
McReport monte_carlo_gft(const DiscreteDistribution& cdf_s, const DiscreteDistribution& sf_b,
                         const PriceTable& seller_prices, const PriceTable& buyer_prices, const McOptions& options);

inline constexpr std::uint64_t kMcBlockSize = 1 << 16;

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace bilateral
