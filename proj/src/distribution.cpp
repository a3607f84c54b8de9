#include "bilateral/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace bilateral {

DiscreteDistribution::DiscreteDistribution(Kind kind, std::vector<std::int64_t> table)
    : kind_(kind), table_(std::move(table)) {
  if (table_.size() < 2 || table_.size() > static_cast<std::size_t>(kMaxSupport) + 1) {
    throw std::invalid_argument("support size must satisfy 1 <= H <= " + std::to_string(kMaxSupport));
  }
  for (std::size_t m = 0; m < table_.size(); ++m) {
    if (table_[m] < 0 || table_[m] > kScale) {
      throw std::out_of_range("table entry " + std::to_string(m) + " outside [0, kScale]");
    }
  }
}

Wide Pmf::total() const {
  Wide sum = 0;
  for (auto v : mass) sum += v;
  return sum;
}

Pmf derive_pmf_from_cdf(const DiscreteDistribution& cdf) {
  if (cdf.kind() != Kind::SellerCdf) throw std::invalid_argument("expected a seller CDF");
  const auto t = cdf.table();
  Pmf pmf;
  pmf.mass.resize(t.size());
  pmf.mass[0] = t[0];
  for (std::size_t m = 1; m < t.size(); ++m) {
    pmf.mass[m] = std::max<std::int64_t>(0, t[m] - t[m - 1]);
  }
  return pmf;
}

Pmf derive_pmf_from_sf(const DiscreteDistribution& sf) {
  if (sf.kind() != Kind::BuyerSf) throw std::invalid_argument("expected a buyer survival function");
  const auto t = sf.table();
  const std::size_t H = t.size() - 1;
  Pmf pmf;
  pmf.mass.resize(t.size());
  for (std::size_t m = 0; m < H; ++m) {
    pmf.mass[m] = std::max<std::int64_t>(0, t[m] - t[m + 1]);
  }
  pmf.mass[H] = t[H];
  return pmf;
}

Pmf derive_pmf(const DiscreteDistribution& d) {
  return d.kind() == Kind::SellerCdf ? derive_pmf_from_cdf(d) : derive_pmf_from_sf(d);
}

DiscreteDistribution round_to_scaled(std::span<const double> real_table, Kind kind, int H,
                                     RealPrecision precision) {
  if (H < 1 || H > kMaxSupport) {
    throw std::invalid_argument("H must satisfy 1 <= H <= " + std::to_string(kMaxSupport));
  }
  if (real_table.size() != static_cast<std::size_t>(H) + 1) {
    throw std::invalid_argument("real table must have H + 1 entries");
  }
  std::vector<std::int64_t> table(real_table.size());
  std::transform(real_table.begin(), real_table.end(), table.begin(),
                 [precision](double p) { return round_scaled(p, precision); });
  return DiscreteDistribution(kind, std::move(table));
}

std::vector<Violation> validate(const DiscreteDistribution& d) {
  std::vector<Violation> out;
  const auto t = d.table();
  const int H = d.H();
  if (d.kind() == Kind::SellerCdf) {
    for (int m = 1; m <= H; ++m) {
      if (t[m] < t[m - 1]) {
        out.push_back({Violation::Type::Monotonicity, m,
                       "CDF decreases at m=" + std::to_string(m)});
      }
    }
    if (t[H] != kScale) {
      out.push_back({Violation::Type::Boundary, H,
                     "CDF(H) = " + std::to_string(t[H]) + ", expected " + std::to_string(kScale)});
    }
  } else {
    for (int m = 1; m <= H; ++m) {
      if (t[m] > t[m - 1]) {
        out.push_back({Violation::Type::Monotonicity, m,
                       "SF increases at m=" + std::to_string(m)});
      }
    }
    if (t[0] != kScale) {
      out.push_back({Violation::Type::Boundary, 0,
                     "SF(0) = " + std::to_string(t[0]) + ", expected " + std::to_string(kScale)});
    }
  }
  return out;
}

void write_distribution(std::ostream& out, const DiscreteDistribution& d) {
  out << "kind = " << to_string(d.kind()) << '\n';
  out << "H = " << d.H() << '\n';
  out << "scale = " << kScale << '\n';
  const auto t = d.table();
  for (std::size_t m = 0; m < t.size(); ++m) {
    out << m << ',' << t[m] << '\n';
  }
}

std::string format_distribution(const DiscreteDistribution& d) {
  std::ostringstream out;
  write_distribution(out, d);
  return out.str();
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::int64_t parse_int(const std::string& text, int line_no) {
  std::int64_t value = 0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw FormatError("line " + std::to_string(line_no) + ": expected an integer, got '" + text + "'");
  }
  return value;
}

}  // namespace

DiscreteDistribution read_distribution(std::istream& in) {
  std::optional<Kind> kind;
  std::optional<std::int64_t> H;
  std::optional<std::int64_t> scale;
  std::vector<std::int64_t> table;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (const auto eq = line.find('='); eq != std::string::npos) {
      if (!table.empty()) throw FormatError("line " + std::to_string(line_no) + ": header after data");
      const std::string key = trim(std::string_view(line).substr(0, eq));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      if (key == "kind") {
        try {
          kind = kind_from_string(value);
        } catch (const std::invalid_argument& e) {
          throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
        }
      } else if (key == "H") {
        H = parse_int(value, line_no);
      } else if (key == "scale") {
        scale = parse_int(value, line_no);
      } else {
        throw FormatError("line " + std::to_string(line_no) + ": unknown header field '" + key + "'");
      }
      continue;
    }

    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 'index,scaled_value'");
    }
    const auto index = parse_int(trim(std::string_view(line).substr(0, comma)), line_no);
    const auto value = parse_int(trim(std::string_view(line).substr(comma + 1)), line_no);
    if (index != static_cast<std::int64_t>(table.size())) {
      throw FormatError("line " + std::to_string(line_no) + ": expected index " +
                        std::to_string(table.size()) + ", got " + std::to_string(index));
    }
    table.push_back(value);
  }

  if (!kind) throw FormatError("missing 'kind' header");
  if (!H) throw FormatError("missing 'H' header");
  if (!scale) throw FormatError("missing 'scale' header");
  if (*scale != kScale) throw FormatError("scale must be " + std::to_string(kScale));
  if (*H < 1 || *H > kMaxSupport) throw FormatError("H out of range: " + std::to_string(*H));
  if (table.size() != static_cast<std::size_t>(*H) + 1) {
    throw FormatError("expected " + std::to_string(*H + 1) + " rows, got " + std::to_string(table.size()));
  }
  try {
    return DiscreteDistribution(*kind, std::move(table));
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
}

DiscreteDistribution load_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_distribution(in);
}

void save_distribution(const std::string& path, const DiscreteDistribution& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_distribution(out, d);
}

std::uint64_t content_hash(const DiscreteDistribution& d) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : format_distribution(d)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace bilateral
