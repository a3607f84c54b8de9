#include "bilateral/rational.hpp"

#include <stdexcept>

namespace bilateral {

ExactRational::Integer to_integer(Wide value) {
  return ExactRational::Integer(wide_to_string(value));
}

ExactRational::ExactRational(Wide numerator, Wide denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  value_ = Value(to_integer(numerator), to_integer(denominator));
}

ExactRational operator/(const ExactRational& a, const ExactRational& b) {
  if (b.value_ == 0) throw std::domain_error("division by zero");
  return ExactRational(a.value_ / b.value_);
}

ExactRational ExactRational::parse(const std::string& text) {
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t");
    const auto last = s.find_last_not_of(" \t");
    return first == std::string::npos ? std::string() : s.substr(first, last - first + 1);
  };
  auto parse_int = [&](const std::string& s) {
    const std::string t = trim(s);
    if (t.empty() || t.find_first_not_of("-0123456789") != std::string::npos) {
      throw std::invalid_argument("malformed rational: '" + text + "'");
    }
    return Integer(t);
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return ExactRational(Value(parse_int(text)));
  const Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("malformed rational: zero denominator");
  return ExactRational(Value(parse_int(text.substr(0, slash)), den));
}

std::string ExactRational::to_fraction() const {
  return numerator().str() + " / " + denominator().str();
}

std::string ExactRational::to_decimal(int digits) const {
  if (digits < 0) throw std::invalid_argument("digits must be >= 0");
  const Integer num = numerator();
  const Integer den = denominator();
  const bool negative = num < 0;
  const Integer magnitude = negative ? Integer(-num) : num;

  Integer pow10 = 1;
  for (int i = 0; i < digits; ++i) pow10 *= 10;

  Integer q = (magnitude * pow10) / den;
  const Integer r = (magnitude * pow10) % den;
  const Integer twice = 2 * r;
  if (twice > den || (twice == den && (q % 2) == 1)) ++q;

  std::string body = q.str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && q != 0) body.insert(0, "-");
  return body;
}

double ExactRational::to_double() const {
  return value_.convert_to<double>();
}

}  // namespace bilateral
