#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bilateral/generators.hpp"
#include "bilateral/rational.hpp"

namespace bilateral {

/// Worst-case ratio of the family member `p` against the equal-revenue
/// buyer on {0..H}. Throws std::invalid_argument for bad parameters and
/// std::domain_error if the ratio is undefined.
ExactRational evaluate_params(const SellerFamilyParams& p, int H);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

inline constexpr std::array<const char*, 5> kFamilyFields = {"w", "a1_base", "a1_amp", "a1_freq", "a2"};

std::array<double, 5> to_vector(const SellerFamilyParams& p);
SellerFamilyParams from_vector(const std::array<double, 5>& x, int H);

struct SearchConfig {
  /// Bounds for (w, a1_base, a1_amp, a1_freq, a2).
  std::array<Interval, 5> bounds{};
  int budget = 500;
  int restarts = 1;
  std::uint64_t seed = 0;
  int H = kMaxSupport;
  /// Cheap screening support; candidates that beat the incumbent here are
  /// re-evaluated at H before they can be accepted.
  std::optional<int> eval_H;
  unsigned threads = 1;

  /// Bounds of +/- `fraction` around the worst-case parameters.
  static SearchConfig around_worst_case(double fraction);
  /// All bounds collapsed to a single point.
  static SearchConfig at_point(const SellerFamilyParams& p);

  void check() const;
};

struct TraceRecord {
  int evaluation = 0;  // 1-based index among all evaluations
  SellerFamilyParams params;
  ExactRational ratio;
};

struct SearchResult {
  SellerFamilyParams best_params;
  ExactRational best_ratio;
  int evaluations = 0;
  std::vector<TraceRecord> trace;
};

/// Random-restart coordinate search with golden-ratio step shrinking.
/// Deterministic for a fixed config regardless of `threads`.
SearchResult run_search(const SearchConfig& cfg);

std::string format_search_report(const SearchResult& result, int digits);

}  // namespace bilateral
