#include "bilateral/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

namespace bilateral {

GftReport reference_evaluate(const DiscreteDistribution& cdf_s, const DiscreteDistribution& sf_b) {
  const int H = cdf_s.H();
  if (H > kMaxSupport) throw std::out_of_range("support too large for the reference evaluator");
  if (sf_b.H() != H) throw std::invalid_argument("support mismatch");
  if (cdf_s.kind() != Kind::SellerCdf || sf_b.kind() != Kind::BuyerSf) {
    throw std::invalid_argument("reference_evaluate expects (seller CDF, buyer SF)");
  }
  const auto cdf = cdf_s.table();
  const auto sf = sf_b.table();
  const auto pmf_s = derive_pmf_from_cdf(cdf_s).mass;
  const auto pmf_b = derive_pmf_from_sf(sf_b).mass;

  Wide first_best = 0;
  for (int s = 0; s <= H; ++s) {
    if (pmf_s[s] <= 0) continue;
    for (int b = s; b <= H; ++b) {
      if (pmf_b[b] <= 0) continue;
      const int gain = b - s;
      first_best += static_cast<Wide>(pmf_s[s]) * pmf_b[b] * gain;
    }
  }

  Wide seller_offering = 0;
  for (int s = 0; s <= H; ++s) {
    if (pmf_s[s] <= 0) continue;
    Wide max_profit = 0;
    int price = s;
    for (int p = s; p <= H; ++p) {
      const Wide profit = static_cast<Wide>(sf[p]) * (p - s);
      if (profit >= max_profit) {
        max_profit = profit;
        price = p;
      }
    }
    Wide expected = 0;
    for (int b = price; b <= H; ++b) {
      if (pmf_b[b] <= 0) continue;
      expected += static_cast<Wide>(pmf_b[b]) * (b - s);
    }
    seller_offering += pmf_s[s] * expected;
  }

  Wide buyer_offering = 0;
  for (int b = 0; b <= H; ++b) {
    if (pmf_b[b] <= 0) continue;
    Wide max_profit = 0;
    int price = b;
    for (int p = 0; p <= b; ++p) {
      const Wide profit = static_cast<Wide>(cdf[p]) * (b - p);
      if (profit > max_profit) {
        max_profit = profit;
        price = p;
      }
    }
    Wide expected = 0;
    for (int s = 0; s <= price; ++s) {
      if (pmf_s[s] <= 0) continue;
      expected += static_cast<Wide>(pmf_s[s]) * (b - s);
    }
    buyer_offering += pmf_b[b] * expected;
  }

  return make_report(first_best, seller_offering, buyer_offering);
}

GftReport reference_evaluate_real(int H, std::span<const double> sf_b, std::span<const double> cdf_s) {
  if (H > kMaxSupport) throw std::out_of_range("support too large for the reference evaluator");
  return reference_evaluate(round_to_scaled(cdf_s, Kind::SellerCdf, H), round_to_scaled(sf_b, Kind::BuyerSf, H));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

struct Moments {
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;

  void add(std::int64_t x) {
    sum += x;
    sum_sq += x * x;
  }
  void merge(const Moments& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
};

struct BlockMoments {
  Moments fb, so, bo, ro2;  // ro2 accumulates so + bo (twice the RO gain)
};

std::int64_t uniform_scaled(std::mt19937_64& rng) {
  constexpr std::uint64_t range = static_cast<std::uint64_t>(kScale);
  constexpr std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                  std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return static_cast<std::int64_t>(x % range);
}

McEstimate summarize(const Moments& m, std::uint64_t n, std::uint64_t seed, int divisor) {
  McEstimate est;
  est.samples = n;
  est.seed = seed;
  est.mean = static_cast<double>(static_cast<long double>(m.sum) / n / divisor);
  if (n > 1) {
    const Wide spread = static_cast<Wide>(n) * m.sum_sq - static_cast<Wide>(m.sum) * m.sum;
    const long double variance =
        static_cast<long double>(spread) / (static_cast<long double>(n) * (n - 1)) / (divisor * divisor);
    est.std_error = static_cast<double>(std::sqrt(variance / n));
  }
  return est;
}

}  // namespace

McReport monte_carlo_gft(const DiscreteDistribution& cdf_s, const DiscreteDistribution& sf_b,
                         const PriceTable& seller_prices, const PriceTable& buyer_prices, const McOptions& options) {
  if (options.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (cdf_s.kind() != Kind::SellerCdf || sf_b.kind() != Kind::BuyerSf) {
    throw std::invalid_argument("monte_carlo_gft expects (seller CDF, buyer SF)");
  }
  const int H = cdf_s.H();
  if (sf_b.H() != H || seller_prices.H() != H || buyer_prices.H() != H) {
    throw std::invalid_argument("support mismatch");
  }
  if (seller_prices.side != PriceTable::Side::Seller || buyer_prices.side != PriceTable::Side::Buyer) {
    throw std::invalid_argument("price tables passed for the wrong sides");
  }
  for (const auto* d : {&cdf_s, &sf_b}) {
    if (!validate(*d).empty()) throw std::invalid_argument("monte_carlo_gft requires valid distributions");
  }

  const auto cdf = cdf_s.table();
  const auto sf = sf_b.table();
  const std::uint64_t blocks = (options.samples + kMcBlockSize - 1) / kMcBlockSize;
  std::vector<BlockMoments> results(blocks);

  auto run_block = [&](std::uint64_t k) {
    std::mt19937_64 rng(splitmix64(options.seed + k * 0x9e3779b97f4a7c15ULL));
    const std::uint64_t begin = k * kMcBlockSize;
    const std::uint64_t end = std::min(options.samples, begin + kMcBlockSize);
    BlockMoments acc;
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::int64_t us = uniform_scaled(rng);
      const std::int64_t ub = uniform_scaled(rng);
      // Pr[s <= m] = cdf[m] / kScale, Pr[b >= m] = sf[m] / kScale.
      const int s = static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), us) - cdf.begin());
      const int b = static_cast<int>(std::partition_point(sf.begin(), sf.end(),
                                                          [ub](std::int64_t v) { return v > ub; }) -
                                     sf.begin()) - 1;
      const std::int64_t gain = b - s;
      const std::int64_t fb = gain >= 0 ? gain : 0;
      const std::int64_t so = b >= seller_prices[s] ? gain : 0;
      const std::int64_t bo = s <= buyer_prices[b] ? gain : 0;
      acc.fb.add(fb);
      acc.so.add(so);
      acc.bo.add(bo);
      acc.ro2.add(so + bo);
    }
    results[k] = acc;
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(blocks)));
  if (threads == 1) {
    for (std::uint64_t k = 0; k < blocks; ++k) run_block(k);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t k = t; k < blocks; k += threads) run_block(k);
      });
    }
    for (auto& th : pool) th.join();
  }

  BlockMoments total;
  for (const auto& r : results) {
    total.fb.merge(r.fb);
    total.so.merge(r.so);
    total.bo.merge(r.bo);
    total.ro2.merge(r.ro2);
  }
  McReport report;
  report.fb = summarize(total.fb, options.samples, options.seed, 1);
  report.so = summarize(total.so, options.samples, options.seed, 1);
  report.bo = summarize(total.bo, options.samples, options.seed, 1);
  report.ro = summarize(total.ro2, options.samples, options.seed, 2);
  return report;
}

}  // namespace bilateral
