#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bilateral/config.hpp"
#include "bilateral/distribution.hpp"
#include "bilateral/generators.hpp"
#include "bilateral/mechanisms.hpp"
#include "bilateral/oracles.hpp"
#include "bilateral/search.hpp"

namespace bilateral::cli {

namespace {

// Raised for problems the user can fix by changing the invocation.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when inputs parse but fail validation.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Published {
  const char* name;
  ExactRational value;
};

// Reported values for the worst-case instance, four decimals each.
std::vector<Published> published_values() {
  return {{"fb", ExactRational(12322, 10000)},
          {"so", ExactRational(3312, 10000)},
          {"bo", ExactRational(8565, 10000)},
          {"ro", ExactRational(5939, 10000)},
          {"ratio", ExactRational(20749, 10000)}};
}

const ExactRational kTolerance(5, 100000);

ExactRational abs_diff(const ExactRational& a, const ExactRational& b) {
  return a > b ? a - b : b - a;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + path);
  file << text;
}

DiscreteDistribution load_checked(const std::string& path, Kind expected, const char* role) {
  DiscreteDistribution d = [&] {
    try {
      return load_distribution(path);
    } catch (const FormatError& e) {
      throw UsageError(std::string(role) + " file " + path + ": " + e.what());
    }
  }();
  if (d.kind() != expected) {
    throw UsageError(std::string(role) + " file " + path + " must have kind = " + to_string(expected));
  }
  const auto violations = validate(d);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << role << " file " << path << " failed validation (" << violations.size() << " violations):";
    for (const auto& v : violations) msg << "\n  " << v.message;
    throw ValidationFailure(msg.str());
  }
  return d;
}

std::string render_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  int digits = 4;
  std::string seller;
  std::string engine = "fast";
  std::string out;
};

int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  const int H = kMaxSupport;
  const DiscreteDistribution seller = opt.seller.empty()
                                          ? modulated_power_mixture_seller(SellerFamilyParams::worst_case())
                                          : load_checked(opt.seller, Kind::SellerCdf, "seller");
  if (seller.H() != H) throw UsageError("verify expects a seller table with H = " + std::to_string(H));
  const DiscreteDistribution buyer = equal_revenue_buyer(H);

  const GftReport report = opt.engine == "reference" ? reference_evaluate(seller, buyer) : evaluate(seller, buyer);

  std::ostringstream doc;
  const auto hash = content_hash(seller);
  doc << "# worst-case instance: equal-revenue buyer, modulated power mixture seller, H = " << H << '\n';
  doc << "seller_hash = " << hash_hex(hash) << '\n';
  doc << "golden_hash = " << hash_hex(kWorstCaseSellerHash) << (hash == kWorstCaseSellerHash ? " (match)" : " (MISMATCH)")
      << '\n';
  doc << format_report(report, opt.digits);

  doc << "[check tolerance=0.00005]\n";
  doc << "quantity,published,computed,abs_diff,status\n";
  bool all_ok = true;
  const ExactRational* computed[] = {&report.fb, &report.so, &report.bo, &report.ro,
                                     report.ratio ? &*report.ratio : nullptr};
  const auto published = published_values();
  for (std::size_t i = 0; i < published.size(); ++i) {
    doc << published[i].name << ',' << published[i].value.to_decimal(4) << ',';
    if (!computed[i]) {
      doc << "undefined,undefined,FAIL\n";
      all_ok = false;
      continue;
    }
    const ExactRational diff = abs_diff(*computed[i], published[i].value);
    const bool ok = diff <= kTolerance;
    all_ok = all_ok && ok;
    doc << computed[i]->to_decimal(opt.digits) << ',' << diff.to_decimal(8) << ',' << (ok ? "ok" : "FAIL") << '\n';
  }
  if (const auto derived = report.best_single_offer_ratio()) {
    doc << "[derived]\n";
    doc << "fb_over_max_offer = " << derived->to_fraction() << '\n';
    doc << "fb_over_max_offer_decimal = " << derived->to_decimal(opt.digits) << '\n';
  }
  doc << "result = " << (all_ok ? "PASS" : "FAIL") << '\n';
  emit(doc.str(), opt.out, out);
  return all_ok ? kOk : kValidationFailure;
}

// ------------------------------------------------------------------ eval

struct EvalOptions {
  std::string seller;
  std::string buyer;
  std::string engine = "fast";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  int digits = 4;
  unsigned threads = 1;
  std::string out;
};

int cmd_eval(const EvalOptions& opt, std::ostream& out) {
  const DiscreteDistribution seller = load_checked(opt.seller, Kind::SellerCdf, "seller");
  const DiscreteDistribution buyer = load_checked(opt.buyer, Kind::BuyerSf, "buyer");
  if (seller.H() != buyer.H()) {
    throw UsageError("seller H=" + std::to_string(seller.H()) + " does not match buyer H=" + std::to_string(buyer.H()));
  }

  std::ostringstream doc;
  doc << "# engine = " << opt.engine << ", H = " << seller.H() << '\n';
  if (opt.engine == "reference") {
    doc << format_report(reference_evaluate(seller, buyer), opt.digits);
  } else {
    doc << format_report(evaluate(seller, buyer), opt.digits);
  }
  if (opt.engine == "mc") {
    const McReport mc = monte_carlo_gft(seller, buyer, optimal_seller_prices(buyer), optimal_buyer_prices(seller),
                                        McOptions{opt.samples, opt.seed, opt.threads});
    doc << "[monte_carlo samples=" << opt.samples << " seed=" << opt.seed << " generator=mt19937_64/splitmix64 v1]\n";
    const std::pair<const char*, const McEstimate*> rows[] = {
        {"fb", &mc.fb}, {"so", &mc.so}, {"bo", &mc.bo}, {"ro", &mc.ro}};
    for (const auto& [name, est] : rows) {
      doc << name << "_mean = " << render_real(est->mean) << '\n';
      doc << name << "_std_error = " << render_real(est->std_error) << '\n';
    }
  }
  emit(doc.str(), opt.out, out);
  return kOk;
}

// ------------------------------------------------------------------- gen

struct GenOptions {
  std::string family = "mixture";
  std::string config;
  std::optional<double> w, a1_base, a1_amp, a1_freq, a2;
  std::optional<int> H;
  std::string kind = "seller_cdf";
  int value = 0;
  std::string out;
};

int cmd_gen(const GenOptions& opt, std::ostream& out) {
  SellerFamilyParams params = SellerFamilyParams::worst_case();
  if (!opt.config.empty()) {
    try {
      params = parse_family_config(read_text_file(opt.config));
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }
  if (opt.w) params.w = *opt.w;
  if (opt.a1_base) params.a1_base = *opt.a1_base;
  if (opt.a1_amp) params.a1_amp = *opt.a1_amp;
  if (opt.a1_freq) params.a1_freq = *opt.a1_freq;
  if (opt.a2) params.a2 = *opt.a2;
  if (opt.H) params.H = *opt.H;

  const DiscreteDistribution d = [&] {
    try {
      if (opt.family == "mixture") return modulated_power_mixture_seller(params);
      if (opt.family == "uniform") return uniform_seller(params.H);
      if (opt.family == "equal-revenue") return equal_revenue_buyer(params.H);
      return point_mass(opt.value, kind_from_string(opt.kind), params.H);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();

  emit(format_distribution(d), opt.out, out);
  if (!opt.out.empty()) out << "wrote " << opt.out << " (hash " << hash_hex(content_hash(d)) << ")\n";
  return kOk;
}

// ---------------------------------------------------------------- export

int cmd_export(const std::string& input, const std::string& path, std::ostream& out) {
  const DiscreteDistribution d = [&] {
    try {
      return load_distribution(input);
    } catch (const FormatError& e) {
      throw UsageError(input + ": " + e.what());
    }
  }();
  std::ostringstream csv;
  csv << "m," << (d.kind() == Kind::SellerCdf ? "cdf_real" : "sf_real") << '\n';
  for (int m = 0; m <= d.H(); ++m) csv << m << ',' << render_real(d.at(m).to_real()) << '\n';
  emit(csv.str(), path, out);
  return kOk;
}

// ---------------------------------------------------------------- search

struct SearchOptions {
  std::string config;
  std::optional<int> budget, restarts, H, eval_H;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  int digits = 6;
  std::string out;
  std::string best_out;
};

int cmd_search(const SearchOptions& opt, std::ostream& out) {
  SearchConfig cfg = SearchConfig::around_worst_case(0.10);
  if (!opt.config.empty()) {
    try {
      cfg = parse_search_config(read_text_file(opt.config));
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }
  if (opt.budget) cfg.budget = *opt.budget;
  if (opt.restarts) cfg.restarts = *opt.restarts;
  if (opt.H) cfg.H = *opt.H;
  if (opt.eval_H) cfg.eval_H = *opt.eval_H;
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.threads) cfg.threads = *opt.threads;
  try {
    cfg.check();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const SearchResult result = run_search(cfg);
  emit(format_search_report(result, opt.digits), opt.out, out);
  if (!opt.best_out.empty()) {
    save_distribution(opt.best_out, modulated_power_mixture_seller(result.best_params));
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact gains-from-trade evaluation for bilateral trade", "gft"};
  app.require_subcommand(1);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Reproduce the worst-case instance and compare to published values");
  verify_cmd->add_option("--digits", verify.digits, "Decimal digits in the report")->check(CLI::Range(0, 60));
  verify_cmd->add_option("--seller", verify.seller, "Replace the generated seller table with this file");
  verify_cmd->add_option("--engine", verify.engine)->check(CLI::IsMember({"fast", "reference"}));
  verify_cmd->add_option("--threads", "Worker cap (evaluation is single-threaded)")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out", verify.out, "Write the report here instead of stdout");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a seller CDF file against a buyer SF file");
  eval_cmd->add_option("--seller", eval.seller)->required();
  eval_cmd->add_option("--buyer", eval.buyer)->required();
  eval_cmd->add_option("--engine", eval.engine)->check(CLI::IsMember({"fast", "reference", "mc"}));
  eval_cmd->add_option("--samples", eval.samples)->check(CLI::PositiveNumber);
  eval_cmd->add_option("--seed", eval.seed);
  eval_cmd->add_option("--digits", eval.digits)->check(CLI::Range(0, 60));
  eval_cmd->add_option("--threads", eval.threads)->check(CLI::PositiveNumber);
  eval_cmd->add_option("--out", eval.out);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a distribution file");
  gen_cmd->add_option("--family", gen.family)
      ->check(CLI::IsMember({"mixture", "uniform", "equal-revenue", "point-mass"}));
  gen_cmd->add_option("--config", gen.config, "JSON file with w, a1_base, a1_amp, a1_freq, a2, H");
  gen_cmd->add_option("--w", gen.w);
  gen_cmd->add_option("--a1-base", gen.a1_base);
  gen_cmd->add_option("--a1-amp", gen.a1_amp);
  gen_cmd->add_option("--a1-freq", gen.a1_freq);
  gen_cmd->add_option("--a2", gen.a2);
  gen_cmd->add_option("--H", gen.H);
  gen_cmd->add_option("--kind", gen.kind, "Kind for point-mass")->check(CLI::IsMember({"seller_cdf", "buyer_sf"}));
  gen_cmd->add_option("--value", gen.value, "Location for point-mass");
  gen_cmd->add_option("--out", gen.out);

  std::string export_in, export_out;
  auto* export_cmd = app.add_subcommand("export", "Write a distribution file as m,value CSV");
  export_cmd->add_option("input", export_in)->required();
  export_cmd->add_option("--out", export_out);

  SearchOptions search;
  auto* search_cmd = app.add_subcommand("search", "Search the seller family for larger ratios");
  search_cmd->add_option("--config", search.config, "JSON search configuration");
  search_cmd->add_option("--budget", search.budget);
  search_cmd->add_option("--restarts", search.restarts);
  search_cmd->add_option("--seed", search.seed);
  search_cmd->add_option("--H", search.H);
  search_cmd->add_option("--eval-H", search.eval_H);
  search_cmd->add_option("--threads", search.threads)->check(CLI::PositiveNumber);
  search_cmd->add_option("--digits", search.digits)->check(CLI::Range(0, 60));
  search_cmd->add_option("--out", search.out);
  search_cmd->add_option("--best-out", search.best_out, "Write the best seller table here");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*eval_cmd) return cmd_eval(eval, out);
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*export_cmd) return cmd_export(export_in, export_out, out);
    if (*search_cmd) return cmd_search(search, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ValidationFailure& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return kUsageError;
}

}  // namespace bilateral::cli
