#include "bilateral/mechanisms.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bilateral {

namespace {

constexpr Wide kScaleSquared = static_cast<Wide>(kScale) * kScale;

void require_same_support(const Pmf& a, const Pmf& b) {
  if (a.H() != b.H()) {
    throw std::invalid_argument("support mismatch: H=" + std::to_string(a.H()) + " vs H=" + std::to_string(b.H()));
  }
}

void require_prices(const PriceTable& prices, PriceTable::Side side, int H) {
  if (prices.side != side) throw std::invalid_argument("price table is for the wrong side");
  if (prices.H() != H) throw std::invalid_argument("price table support mismatch");
}

// Seller of type s: last maximizer of SF(p) * (p - s) over p in [from, to],
// starting from (profit 0, price s).
int seller_best_price(std::span<const std::int64_t> sf, int s, int from, int to) {
  Wide best = 0;
  int price = s;
  for (int p = std::max(s, from); p <= to; ++p) {
    const Wide profit = static_cast<Wide>(sf[p]) * (p - s);
    if (profit >= best) {
      best = profit;
      price = p;
    }
  }
  return price;
}

// Buyer of type b: first strict maximizer of CDF(p) * (b - p) over
// p in [from, min(b, to)], starting from (profit 0, price b).
int buyer_best_price(std::span<const std::int64_t> cdf, int b, int from, int to) {
  Wide best = 0;
  int price = b;
  const int last = std::min(b, to);
  for (int p = from; p <= last; ++p) {
    const Wide profit = static_cast<Wide>(cdf[p]) * (b - p);
    if (profit > best) {
      best = profit;
      price = p;
    }
  }
  return price;
}

// Divide and conquer over types: the chosen price for the middle type
// bounds the scan window of every type on either side.
void seller_monotone(std::span<const std::int64_t> sf, std::vector<int>& out, int s_lo, int s_hi, int p_lo,
                     int p_hi) {
  if (s_lo > s_hi) return;
  const int mid = s_lo + (s_hi - s_lo) / 2;
  const int price = seller_best_price(sf, mid, p_lo, p_hi);
  out[mid] = price;
  seller_monotone(sf, out, s_lo, mid - 1, p_lo, price);
  seller_monotone(sf, out, mid + 1, s_hi, price, p_hi);
}

void buyer_monotone(std::span<const std::int64_t> cdf, std::vector<int>& out, int b_lo, int b_hi, int p_lo,
                    int p_hi) {
  if (b_lo > b_hi) return;
  const int mid = b_lo + (b_hi - b_lo) / 2;
  const int price = buyer_best_price(cdf, mid, p_lo, p_hi);
  out[mid] = price;
  buyer_monotone(cdf, out, b_lo, mid - 1, p_lo, price);
  buyer_monotone(cdf, out, mid + 1, b_hi, price, p_hi);
}

struct SuffixSums {
  std::vector<Wide> mass;      // sum_{x >= t} pmf[x]
  std::vector<Wide> weighted;  // sum_{x >= t} pmf[x] * x
};

SuffixSums suffix_sums(const Pmf& pmf) {
  const std::size_t n = pmf.mass.size();
  SuffixSums out{std::vector<Wide>(n + 1, 0), std::vector<Wide>(n + 1, 0)};
  for (std::size_t i = n; i-- > 0;) {
    out.mass[i] = out.mass[i + 1] + pmf.mass[i];
    out.weighted[i] = out.weighted[i + 1] + static_cast<Wide>(pmf.mass[i]) * static_cast<Wide>(i);
  }
  return out;
}

}  // namespace

std::optional<ExactRational> GftReport::best_single_offer_ratio() const {
  const ExactRational& best = std::max(so, bo);
  if (best == ExactRational()) return std::nullopt;
  return fb / best;
}

PriceTable optimal_seller_prices(const DiscreteDistribution& sf_b, PriceScan scan) {
  if (sf_b.kind() != Kind::BuyerSf) throw std::invalid_argument("seller prices need a buyer survival function");
  const int H = sf_b.H();
  PriceTable table{PriceTable::Side::Seller, std::vector<int>(static_cast<std::size_t>(H) + 1)};
  if (scan == PriceScan::Full) {
    for (int s = 0; s <= H; ++s) table.prices[s] = seller_best_price(sf_b.table(), s, s, H);
  } else {
    seller_monotone(sf_b.table(), table.prices, 0, H, 0, H);
  }
  return table;
}

PriceTable optimal_buyer_prices(const DiscreteDistribution& cdf_s, PriceScan scan) {
  if (cdf_s.kind() != Kind::SellerCdf) throw std::invalid_argument("buyer prices need a seller CDF");
  const int H = cdf_s.H();
  PriceTable table{PriceTable::Side::Buyer, std::vector<int>(static_cast<std::size_t>(H) + 1)};
  if (scan == PriceScan::Full) {
    for (int b = 0; b <= H; ++b) table.prices[b] = buyer_best_price(cdf_s.table(), b, 0, b);
  } else {
    buyer_monotone(cdf_s.table(), table.prices, 0, H, 0, H);
  }
  return table;
}

Wide first_best_numerator(const Pmf& pmf_s, const Pmf& pmf_b) {
  require_same_support(pmf_s, pmf_b);
  const auto tail = suffix_sums(pmf_b);
  Wide total = 0;
  for (std::size_t s = 0; s < pmf_s.mass.size(); ++s) {
    if (pmf_s.mass[s] == 0) continue;
    const Wide surplus = tail.weighted[s] - static_cast<Wide>(s) * tail.mass[s];
    total += pmf_s.mass[s] * surplus;
  }
  return total;
}

Wide seller_offering_numerator(const Pmf& pmf_s, const Pmf& pmf_b, const PriceTable& prices) {
  require_same_support(pmf_s, pmf_b);
  require_prices(prices, PriceTable::Side::Seller, pmf_s.H());
  const auto tail = suffix_sums(pmf_b);
  Wide total = 0;
  for (std::size_t s = 0; s < pmf_s.mass.size(); ++s) {
    if (pmf_s.mass[s] == 0) continue;
    const auto p = static_cast<std::size_t>(prices[s]);
    const Wide surplus = tail.weighted[p] - static_cast<Wide>(s) * tail.mass[p];
    total += pmf_s.mass[s] * surplus;
  }
  return total;
}

Wide buyer_offering_numerator(const Pmf& pmf_s, const Pmf& pmf_b, const PriceTable& prices) {
  require_same_support(pmf_s, pmf_b);
  require_prices(prices, PriceTable::Side::Buyer, pmf_s.H());
  const std::size_t n = pmf_s.mass.size();
  std::vector<Wide> head_mass(n), head_weighted(n);
  Wide mass = 0, weighted = 0;
  for (std::size_t s = 0; s < n; ++s) {
    mass += pmf_s.mass[s];
    weighted += static_cast<Wide>(pmf_s.mass[s]) * static_cast<Wide>(s);
    head_mass[s] = mass;
    head_weighted[s] = weighted;
  }
  Wide total = 0;
  for (std::size_t b = 0; b < n; ++b) {
    if (pmf_b.mass[b] == 0) continue;
    const auto p = static_cast<std::size_t>(prices[b]);
    const Wide surplus = static_cast<Wide>(b) * head_mass[p] - head_weighted[p];
    total += pmf_b.mass[b] * surplus;
  }
  return total;
}

ExactRational first_best_gft(const Pmf& pmf_s, const Pmf& pmf_b) {
  return ExactRational(first_best_numerator(pmf_s, pmf_b), kScaleSquared);
}

ExactRational seller_offering_gft(const Pmf& pmf_s, const Pmf& pmf_b, const PriceTable& prices) {
  return ExactRational(seller_offering_numerator(pmf_s, pmf_b, prices), kScaleSquared);
}

ExactRational buyer_offering_gft(const Pmf& pmf_s, const Pmf& pmf_b, const PriceTable& prices) {
  return ExactRational(buyer_offering_numerator(pmf_s, pmf_b, prices), kScaleSquared);
}

GftReport make_report(Wide fb, Wide so, Wide bo) {
  GftReport report;
  report.fb = ExactRational(fb, kScaleSquared);
  report.so = ExactRational(so, kScaleSquared);
  report.bo = ExactRational(bo, kScaleSquared);
  report.ro = ExactRational(so + bo, 2 * kScaleSquared);
  if (so + bo != 0) report.ratio = report.fb / report.ro;
  return report;
}

GftReport evaluate(const DiscreteDistribution& cdf_s, const DiscreteDistribution& sf_b, EvaluateOptions options) {
  if (cdf_s.kind() != Kind::SellerCdf) throw std::invalid_argument("first argument must be a seller CDF");
  if (sf_b.kind() != Kind::BuyerSf) throw std::invalid_argument("second argument must be a buyer survival function");
  if (cdf_s.H() != sf_b.H()) {
    throw std::invalid_argument("support mismatch: seller H=" + std::to_string(cdf_s.H()) +
                                ", buyer H=" + std::to_string(sf_b.H()));
  }
  for (const auto* d : {&cdf_s, &sf_b}) {
    const auto violations = validate(*d);
    if (!violations.empty()) {
      throw std::invalid_argument("invalid " + to_string(d->kind()) + ": " + violations.front().message +
                                  (violations.size() > 1 ? " (and more)" : ""));
    }
  }

  const Pmf pmf_s = derive_pmf_from_cdf(cdf_s);
  const Pmf pmf_b = derive_pmf_from_sf(sf_b);
  const PriceTable seller_prices = optimal_seller_prices(sf_b, options.scan);
  const PriceTable buyer_prices = optimal_buyer_prices(cdf_s, options.scan);

  return make_report(first_best_numerator(pmf_s, pmf_b),
                     seller_offering_numerator(pmf_s, pmf_b, seller_prices),
                     buyer_offering_numerator(pmf_s, pmf_b, buyer_prices));
}

std::string format_report(const GftReport& report, int digits) {
  std::ostringstream out;
  const std::pair<const char*, const ExactRational*> fields[] = {
      {"fb", &report.fb}, {"so", &report.so}, {"bo", &report.bo}, {"ro", &report.ro}};
  out << "[exact]\n";
  for (const auto& [name, value] : fields) out << name << " = " << value->to_fraction() << '\n';
  out << "ratio = " << (report.ratio ? report.ratio->to_fraction() : "undefined") << '\n';
  out << "[decimal digits=" << digits << "]\n";
  for (const auto& [name, value] : fields) out << name << " = " << value->to_decimal(digits) << '\n';
  out << "ratio = " << (report.ratio ? report.ratio->to_decimal(digits) : "undefined") << '\n';
  return out.str();
}

}  // namespace bilateral
