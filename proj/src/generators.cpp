#include "bilateral/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bilateral {

namespace {

void check_support(int H) {
  if (H < 1 || H > kMaxSupport) {
    throw std::invalid_argument("H must satisfy 1 <= H <= " + std::to_string(kMaxSupport) +
                                ", got " + std::to_string(H));
  }
}

}  // namespace

std::vector<std::string> SellerFamilyParams::problems() const {
  std::vector<std::string> out;
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(w) || w < 0.0 || w > 1.0) out.emplace_back("w must lie in [0, 1]");
  if (!finite(a1_base) || a1_base <= 0.0) out.emplace_back("a1_base must be > 0");
  if (!finite(a1_amp) || a1_amp < 0.0) out.emplace_back("a1_amp must be >= 0");
  if (!finite(a1_freq) || a1_freq < 0.0) out.emplace_back("a1_freq must be >= 0");
  if (!finite(a2) || a2 <= 0.0) out.emplace_back("a2 must be > 0");
  if (finite(a1_base) && finite(a1_amp) && a1_base - a1_amp < kExponentFloor) {
    out.emplace_back("a1_base - a1_amp must be >= 1e-9");
  }
  if (H < 1 || H > kMaxSupport) out.emplace_back("H must satisfy 1 <= H <= " + std::to_string(kMaxSupport));
  return out;
}

void SellerFamilyParams::check() const {
  const auto issues = problems();
  if (issues.empty()) return;
  std::ostringstream msg;
  msg << "invalid seller family parameters:";
  for (const auto& issue : issues) msg << ' ' << issue << ';';
  throw std::invalid_argument(msg.str());
}

DiscreteDistribution equal_revenue_buyer(int H) {
  check_support(H);
  std::vector<double> sf(static_cast<std::size_t>(H) + 1);
  sf[0] = 1.0;
  for (int m = 1; m <= H; ++m) sf[m] = 1.0 / m;
  return round_to_scaled(sf, Kind::BuyerSf, H);
}

DiscreteDistribution uniform_seller(int H) {
  check_support(H);
  std::vector<double> cdf(static_cast<std::size_t>(H) + 1);
  const double norm = H + 1.0;
  for (int m = 0; m <= H; ++m) cdf[m] = (m + 1.0) / norm;
  return round_to_scaled(cdf, Kind::SellerCdf, H);
}

DiscreteDistribution point_mass(int v, Kind kind, int H) {
  check_support(H);
  if (v < 0 || v > H) {
    throw std::invalid_argument("point mass location " + std::to_string(v) + " outside {0.." +
                                std::to_string(H) + "}");
  }
  std::vector<std::int64_t> table(static_cast<std::size_t>(H) + 1, 0);
  for (int m = 0; m <= H; ++m) {
    const bool full = kind == Kind::SellerCdf ? m >= v : m <= v;
    table[m] = full ? kScale : 0;
  }
  return DiscreteDistribution(kind, std::move(table));
}

std::vector<double> modulated_power_mixture_real(const SellerFamilyParams& p) {
  p.check();
  // Operation order is fixed: the rounded table (and hence the exact ratio)
  // is sensitive to the last ulp of each entry.
  std::vector<double> cdf(static_cast<std::size_t>(p.H) + 1);
  const double norm_factor = p.H + 1.0;
  double prev_cdf = 0.0;
  for (int m = 0; m <= p.H; ++m) {
    const double base = std::max(0.0, std::min(1.0, (m + 1.0) / norm_factor));

    double a1_eff = p.a1_base + p.a1_amp * std::sin(p.a1_freq * std::numbers::pi * base);
    a1_eff = std::max(kExponentFloor, a1_eff);

    const double cdf1 = std::pow(base, a1_eff);
    const double cdf2 = std::pow(base, p.a2);
    double current = p.w * cdf1 + (1.0 - p.w) * cdf2;

    current = std::max(0.0, std::min(current, 1.0));
    current = std::max(current, prev_cdf);

    cdf[m] = current;
    prev_cdf = current;
  }
  return cdf;
}

DiscreteDistribution modulated_power_mixture_seller(const SellerFamilyParams& p, RealPrecision precision) {
  const auto real = modulated_power_mixture_real(p);
  return round_to_scaled(real, Kind::SellerCdf, p.H, precision);
}

}  // namespace bilateral
