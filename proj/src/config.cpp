#include "bilateral/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bilateral {

using nlohmann::json;

namespace {

json parse_object(const std::string& text, const std::set<std::string>& allowed) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown configuration field '" + key + "'");
  }
  return doc;
}

template <typename T>
void read_field(const json& doc, const char* key, T& out) {
  if (!doc.contains(key)) return;
  try {
    out = doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

SellerFamilyParams parse_family_config(const std::string& json_text) {
  const json doc = parse_object(json_text, {"w", "a1_base", "a1_amp", "a1_freq", "a2", "H"});
  SellerFamilyParams p;
  read_field(doc, "w", p.w);
  read_field(doc, "a1_base", p.a1_base);
  read_field(doc, "a1_amp", p.a1_amp);
  read_field(doc, "a1_freq", p.a1_freq);
  read_field(doc, "a2", p.a2);
  read_field(doc, "H", p.H);
  return p;
}

SearchConfig parse_search_config(const std::string& json_text) {
  const json doc = parse_object(json_text, {"bounds", "budget", "restarts", "seed", "H", "eval_H", "threads"});
  SearchConfig cfg = SearchConfig::around_worst_case(0.10);
  if (doc.contains("bounds")) {
    const json& bounds = doc.at("bounds");
    if (!bounds.is_object()) throw ConfigError("'bounds' must be an object");
    for (const auto& [key, value] : bounds.items()) {
      const auto it = std::find(kFamilyFields.begin(), kFamilyFields.end(), key);
      if (it == kFamilyFields.end()) throw ConfigError("unknown bound '" + key + "'");
      if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
        throw ConfigError("bound '" + key + "' must be [lo, hi]");
      }
      cfg.bounds[static_cast<std::size_t>(it - kFamilyFields.begin())] = {value[0].get<double>(),
                                                                           value[1].get<double>()};
    }
  }
  read_field(doc, "budget", cfg.budget);
  read_field(doc, "restarts", cfg.restarts);
  read_field(doc, "seed", cfg.seed);
  read_field(doc, "H", cfg.H);
  read_field(doc, "threads", cfg.threads);
  if (doc.contains("eval_H") && !doc.at("eval_H").is_null()) {
    int eval_h = 0;
    read_field(doc, "eval_H", eval_h);
    cfg.eval_H = eval_h;
  }
  return cfg;
}

std::string family_config_json(const SellerFamilyParams& p) {
  json doc = {{"w", p.w}, {"a1_base", p.a1_base}, {"a1_amp", p.a1_amp},
              {"a1_freq", p.a1_freq}, {"a2", p.a2}, {"H", p.H}};
  return doc.dump(2);
}

std::string search_config_json(const SearchConfig& cfg) {
  json bounds = json::object();
  for (std::size_t i = 0; i < kFamilyFields.size(); ++i) {
    bounds[kFamilyFields[i]] = {cfg.bounds[i].lo, cfg.bounds[i].hi};
  }
  json doc = {{"bounds", bounds},   {"budget", cfg.budget}, {"restarts", cfg.restarts},
              {"seed", cfg.seed},   {"H", cfg.H},           {"threads", cfg.threads},
              {"eval_H", cfg.eval_H ? json(*cfg.eval_H) : json(nullptr)}};
  return doc.dump(2);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace bilateral
