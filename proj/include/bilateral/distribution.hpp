#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bilateral/scaled.hpp"

namespace bilateral {

/// A seller CDF (entry m is Pr[s <= m]) or buyer survival function (entry m
/// is Pr[b >= m]) over {0..H}, stored in kScale units.
///
/// Construction checks the domain size and the per-entry range only.
/// Monotonicity and boundary conditions are reported by validate() so that
/// malformed tables can still be inspected.
class DiscreteDistribution {
 public:
  DiscreteDistribution(Kind kind, std::vector<std::int64_t> table);

  Kind kind() const { return kind_; }
  int H() const { return static_cast<int>(table_.size()) - 1; }
  std::span<const std::int64_t> table() const { return table_; }
  std::int64_t operator[](std::size_t m) const { return table_[m]; }
  ScaledProb at(int m) const { return ScaledProb(table_.at(static_cast<std::size_t>(m))); }

  friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;

 private:
  Kind kind_;
  std::vector<std::int64_t> table_;
};

/// Probability mass in kScale units; mass[m] = Pr[X = m] * kScale.
struct Pmf {
  std::vector<std::int64_t> mass;

  int H() const { return static_cast<int>(mass.size()) - 1; }
  Wide total() const;
};

/// mass[0] = F(0), mass[m] = max(0, F(m) - F(m-1)).
Pmf derive_pmf_from_cdf(const DiscreteDistribution& cdf);

/// mass[m] = max(0, SF(m) - SF(m+1)) for m < H, mass[H] = SF(H).
Pmf derive_pmf_from_sf(const DiscreteDistribution& sf);

/// Dispatches on the distribution kind.
Pmf derive_pmf(const DiscreteDistribution& d);

DiscreteDistribution round_to_scaled(std::span<const double> real_table, Kind kind, int H,
                                     RealPrecision precision = RealPrecision::Binary64);

struct Violation {
  enum class Type { Monotonicity, Boundary };
  Type type;
  int index;
  std::string message;
};

/// Empty iff the table is monotone in the direction of its kind and carries
/// full mass at its anchored end (CDF at H, SF at 0).
std::vector<Violation> validate(const DiscreteDistribution& d);

// Text file format:
//
//   kind = seller_cdf | buyer_sf
//   H = <int>
//   scale = 1000000000000000
//   0,<scaled>
//   ...
//   H,<scaled>
//
// Lines starting with '#' and blank lines are ignored on read.

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_distribution(std::ostream& out, const DiscreteDistribution& d);
std::string format_distribution(const DiscreteDistribution& d);
DiscreteDistribution read_distribution(std::istream& in);
DiscreteDistribution load_distribution(const std::string& path);
void save_distribution(const std::string& path, const DiscreteDistribution& d);

/// FNV-1a 64-bit digest of the serialized form; used to pin golden tables.
std::uint64_t content_hash(const DiscreteDistribution& d);
std::string hash_hex(std::uint64_t hash);

}  // namespace bilateral
