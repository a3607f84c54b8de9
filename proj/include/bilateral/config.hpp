#pragma once

#include <stdexcept>
#include <string>

#include "bilateral/generators.hpp"
#include "bilateral/search.hpp"

namespace bilateral {

// JSON configuration files.
//
// Seller family:  {"w": 0.2, "a1_base": 0.15, "a1_amp": 0.05, "a1_freq": 2.0, "a2": 4.0, "H": 20000}
// Search:         {"bounds": {"w": [lo, hi], ...}, "budget": 500, "restarts": 1,
//                  "seed": 7, "H": 20000, "eval_H": 2000, "threads": 1}
//
// Missing fields keep their defaults; unknown fields are rejected.

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SellerFamilyParams parse_family_config(const std::string& json_text);
SearchConfig parse_search_config(const std::string& json_text);

std::string family_config_json(const SellerFamilyParams& p);
std::string search_config_json(const SearchConfig& cfg);

std::string read_text_file(const std::string& path);

}  // namespace bilateral
