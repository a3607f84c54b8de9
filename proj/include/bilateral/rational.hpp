#pragma once

#include <compare>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "bilateral/scaled.hpp"

namespace bilateral {

/// Reduced rational with arbitrary-precision numerator and denominator.
class ExactRational {
 public:
  using Integer = boost::multiprecision::cpp_int;
  using Value = boost::multiprecision::cpp_rational;

  ExactRational() = default;
  explicit ExactRational(Value value) : value_(std::move(value)) {}
  ExactRational(Wide numerator, Wide denominator);
  static ExactRational integer(long long n) { return ExactRational(Value(n)); }

  /// Parses "n / d" or "n".
  static ExactRational parse(const std::string& text);

  Integer numerator() const { return boost::multiprecision::numerator(value_); }
  Integer denominator() const { return boost::multiprecision::denominator(value_); }
  const Value& value() const { return value_; }

  /// "numerator / denominator" in lowest terms.
  std::string to_fraction() const;

  /// Decimal rendering with exactly `digits` fractional digits, rounded
  /// half-to-even. digits = 0 renders an integer.
  std::string to_decimal(int digits) const;

  double to_double() const;

  friend ExactRational operator+(const ExactRational& a, const ExactRational& b) { return ExactRational(a.value_ + b.value_); }
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b) { return ExactRational(a.value_ - b.value_); }
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b) { return ExactRational(a.value_ * b.value_); }
  friend ExactRational operator/(const ExactRational& a, const ExactRational& b);

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Value value_{0};
};

ExactRational::Integer to_integer(Wide value);

}  // namespace bilateral
