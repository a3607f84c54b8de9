#include <doctest.h>

#include <cmath>

#include "bilateral/generators.hpp"
#include "bilateral/mechanisms.hpp"
#include "bilateral/oracles.hpp"
#include "support.hpp"

using namespace bilateral;
using bilateral::testing::table_of;

namespace {

constexpr std::int64_t kHalf = kScale / 2;

DiscreteDistribution two_point_seller() { return table_of(Kind::SellerCdf, {kHalf, kHalf, kScale}); }
DiscreteDistribution two_point_buyer() { return table_of(Kind::BuyerSf, {kScale, kScale, kHalf}); }

McReport run_mc(const DiscreteDistribution& s, const DiscreteDistribution& b, std::uint64_t samples,
                std::uint64_t seed, unsigned threads = 1) {
  return monte_carlo_gft(s, b, optimal_seller_prices(b), optimal_buyer_prices(s), McOptions{samples, seed, threads});
}

bool within(const McEstimate& est, const ExactRational& exact, double sigmas) {
  return std::abs(est.mean - exact.to_double()) <= sigmas * est.std_error;
}

}  // namespace

TEST_CASE("reference evaluator on fixtures") {
  const auto ref = reference_evaluate(two_point_seller(), two_point_buyer());
  CHECK(ref == evaluate(two_point_seller(), two_point_buyer()));
  REQUIRE(ref.ratio);
  CHECK(*ref.ratio == ExactRational(6, 5));

  for (int H : {1, 4, 9}) {
    const auto r = reference_evaluate(point_mass(0, Kind::SellerCdf, H), point_mass(H, Kind::BuyerSf, H));
    CHECK(r.fb == ExactRational::integer(H));
    CHECK(r.so == ExactRational::integer(H));
    CHECK(r.bo == ExactRational::integer(H));
    CHECK(r.ro == ExactRational::integer(H));
    CHECK(*r.ratio == ExactRational::integer(1));
  }

  CHECK_THROWS_AS(reference_evaluate(uniform_seller(2), equal_revenue_buyer(3)), std::invalid_argument);
}

TEST_CASE("reference evaluator from real tables") {
  const std::vector<double> sf{1.0, 1.0, 0.5};
  const std::vector<double> cdf{0.5, 0.5, 1.0};
  CHECK(*reference_evaluate_real(2, sf, cdf).ratio == ExactRational(6, 5));
  const std::vector<double> big(20002, 1.0);
  CHECK_THROWS_AS(reference_evaluate_real(20001, big, big), std::out_of_range);
}

TEST_CASE("reference port keeps clamping behaviour on non-monotone input") {
  // Non-monotone CDF: the pmf clamps the negative step, and no validation runs.
  const auto bumpy = table_of(Kind::SellerCdf, {kHalf, kHalf / 2, kScale});
  const auto r = reference_evaluate(bumpy, two_point_buyer());
  CHECK(r.fb > ExactRational());
  CHECK_THROWS_AS(evaluate(bumpy, two_point_buyer()), std::invalid_argument);
}

TEST_CASE("monte carlo on a deterministic instance") {
  const auto mc = run_mc(point_mass(0, Kind::SellerCdf, 5), point_mass(5, Kind::BuyerSf, 5), 1000, 3);
  CHECK(mc.fb.mean == 5.0);
  CHECK(mc.fb.std_error == 0.0);
  CHECK(mc.so.mean == 5.0);
  CHECK(mc.bo.mean == 5.0);
  CHECK(mc.ro.mean == 5.0);
  CHECK(mc.fb.samples == 1000);
  CHECK(mc.fb.seed == 3);
}

TEST_CASE("monte carlo on the two-point instance") {
  const auto exact = evaluate(two_point_seller(), two_point_buyer());
  const auto mc = run_mc(two_point_seller(), two_point_buyer(), 1'000'000, 11);
  CHECK(within(mc.fb, exact.fb, 3.0));
  CHECK(within(mc.so, exact.so, 3.0));
  CHECK(within(mc.bo, exact.bo, 3.0));
  CHECK(within(mc.ro, exact.ro, 3.0));
  CHECK(mc.fb.std_error > 0.0);
}

TEST_CASE("monte carlo is deterministic and independent of thread count") {
  const auto s = uniform_seller(40);
  const auto b = equal_revenue_buyer(40);
  const auto one = run_mc(s, b, 300'001, 9, 1);
  const auto four = run_mc(s, b, 300'001, 9, 4);
  const auto again = run_mc(s, b, 300'001, 9, 1);
  for (auto [x, y, z] : {std::tuple{one.fb, four.fb, again.fb}, std::tuple{one.so, four.so, again.so},
                         std::tuple{one.bo, four.bo, again.bo}, std::tuple{one.ro, four.ro, again.ro}}) {
    CHECK(x.mean == y.mean);
    CHECK(x.std_error == y.std_error);
    CHECK(x.mean == z.mean);
  }
  const auto other = run_mc(s, b, 300'001, 10, 1);
  CHECK(other.fb.mean != one.fb.mean);
}

TEST_CASE("monte carlo standard error shrinks with more samples") {
  const auto s = uniform_seller(30);
  const auto b = equal_revenue_buyer(30);
  double ratio_sum = 0.0;
  const int seeds = 10;
  for (int seed = 0; seed < seeds; ++seed) {
    const auto small = run_mc(s, b, 30'000, static_cast<std::uint64_t>(seed));
    const auto large = run_mc(s, b, 90'000, static_cast<std::uint64_t>(seed) + 1000);
    ratio_sum += small.fb.std_error / large.fb.std_error;
  }
  CHECK(ratio_sum / seeds >= std::sqrt(2.0));
}

TEST_CASE("monte carlo input checks") {
  const auto s = uniform_seller(3);
  const auto b = equal_revenue_buyer(3);
  CHECK_THROWS_AS(monte_carlo_gft(s, b, optimal_seller_prices(b), optimal_buyer_prices(s), McOptions{0, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(monte_carlo_gft(s, b, optimal_buyer_prices(s), optimal_seller_prices(b), McOptions{10, 1, 1}),
                  std::invalid_argument);
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}
