#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "bilateral/distribution.hpp"
#include "bilateral/generators.hpp"
#include "cli.hpp"

using namespace bilateral;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result gft(std::vector<std::string> args) {
  args.insert(args.begin(), "gft");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("gft_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string exact_block(const std::string& report) {
  const auto begin = report.find("[exact]");
  const auto end = report.find("[decimal");
  return report.substr(begin, end - begin);
}

constexpr const char* kTwoPointSeller =
    "kind = seller_cdf\nH = 2\nscale = 1000000000000000\n0,500000000000000\n1,500000000000000\n2,1000000000000000\n";
constexpr const char* kTwoPointBuyer =
    "kind = buyer_sf\nH = 2\nscale = 1000000000000000\n0,1000000000000000\n1,1000000000000000\n2,500000000000000\n";

}  // namespace

TEST_CASE("gen and export") {
  TempDir dir;
  const auto uniform = dir.file("uniform.txt");
  auto r = gft({"gen", "--family", "uniform", "--H", "3", "--out", uniform});
  REQUIRE(r.code == 0);
  CHECK(slurp(uniform) == format_distribution(uniform_seller(3)));

  const auto csv = dir.file("uniform.csv");
  r = gft({"export", uniform, "--out", csv});
  REQUIRE(r.code == 0);
  CHECK(slurp(csv) == "m,cdf_real\n0,0.25\n1,0.5\n2,0.75\n3,1.0\n");

  r = gft({"gen", "--family", "equal-revenue", "--H", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == format_distribution(equal_revenue_buyer(2)));
  r = gft({"export", "-"});
  CHECK(r.code == 2);

  r = gft({"gen", "--family", "point-mass", "--kind", "buyer_sf", "--value", "1", "--H", "2"});
  CHECK(r.out == format_distribution(point_mass(1, Kind::BuyerSf, 2)));
}

TEST_CASE("gen with the worst-case parameters matches the pinned hash") {
  TempDir dir;
  const auto path = dir.file("worst.txt");
  REQUIRE(gft({"gen", "--out", path}).code == 0);
  CHECK(content_hash(load_distribution(path)) == kWorstCaseSellerHash);

  const auto cfg = dir.file("family.json");
  write(cfg, R"({"w": 0.2, "a1_base": 0.15, "a1_amp": 0.05, "a1_freq": 2.0, "a2": 4.0, "H": 20000})");
  const auto via_config = dir.file("worst_cfg.txt");
  REQUIRE(gft({"gen", "--config", cfg, "--out", via_config}).code == 0);
  CHECK(slurp(via_config) == slurp(path));

  CHECK(gft({"gen", "--a1-amp", "0.5"}).code == 2);
  write(cfg, R"({"w": 0.2, "bogus": 1})");
  CHECK(gft({"gen", "--config", cfg}).code == 2);
  CHECK(gft({"gen", "--family", "cauchy"}).code == 2);
}

TEST_CASE("generated files evaluate cleanly") {
  TempDir dir;
  const auto seller = dir.file("s.txt");
  const auto buyer = dir.file("b.txt");
  for (const char* w : {"0.0", "0.5", "1.0"}) {
    REQUIRE(gft({"gen", "--w", w, "--a1-freq", "7.5", "--H", "64", "--out", seller}).code == 0);
    REQUIRE(gft({"gen", "--family", "equal-revenue", "--H", "64", "--out", buyer}).code == 0);
    const auto r = gft({"eval", "--seller", seller, "--buyer", buyer});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
  }
}

TEST_CASE("eval engines") {
  TempDir dir;
  const auto seller = dir.file("s.txt");
  const auto buyer = dir.file("b.txt");
  write(seller, kTwoPointSeller);
  write(buyer, kTwoPointBuyer);

  const auto fast = gft({"eval", "--seller", seller, "--buyer", buyer});
  REQUIRE(fast.code == 0);
  CHECK(fast.out.find("ratio = 6 / 5\n") != std::string::npos);
  CHECK(fast.out.find("ratio = 1.2000\n") != std::string::npos);

  const auto ref = gft({"eval", "--seller", seller, "--buyer", buyer, "--engine", "reference"});
  REQUIRE(ref.code == 0);
  CHECK(exact_block(ref.out) == exact_block(fast.out));

  const auto mc = gft({"eval", "--seller", seller, "--buyer", buyer, "--engine", "mc", "--samples", "20000",
                       "--seed", "5"});
  REQUIRE(mc.code == 0);
  CHECK(mc.out.find("fb_mean = ") != std::string::npos);
  CHECK(mc.out.find("samples=20000 seed=5") != std::string::npos);
  CHECK(gft({"eval", "--seller", seller, "--buyer", buyer, "--engine", "mc", "--samples", "20000", "--seed", "5",
             "--threads", "3"})
            .out == mc.out);
}

TEST_CASE("eval on a no-trade instance reports an undefined ratio") {
  TempDir dir;
  const auto seller = dir.file("s.txt");
  const auto buyer = dir.file("b.txt");
  save_distribution(seller, point_mass(2, Kind::SellerCdf, 2));
  save_distribution(buyer, point_mass(1, Kind::BuyerSf, 2));
  const auto r = gft({"eval", "--seller", seller, "--buyer", buyer});
  CHECK(r.code == 0);
  CHECK(r.out.find("ratio = undefined") != std::string::npos);
}

TEST_CASE("eval input errors") {
  TempDir dir;
  const auto seller = dir.file("s.txt");
  const auto buyer = dir.file("b.txt");
  write(buyer, kTwoPointBuyer);

  write(seller, "kind = seller_cdf\nH = 2\nscale = 1000000000000000\n0,500000000000000\n1,400000000000000\n2,999\n");
  auto r = gft({"eval", "--seller", seller, "--buyer", buyer});
  CHECK(r.code == 1);
  CHECK(r.err.find("CDF decreases at m=1") != std::string::npos);
  CHECK(r.err.find("CDF(H)") != std::string::npos);

  write(seller, "kind = seller_cdf\nH = 2\n0,1\n");
  CHECK(gft({"eval", "--seller", seller, "--buyer", buyer}).code == 2);
  CHECK(gft({"eval", "--seller", buyer, "--buyer", buyer}).code == 2);
  CHECK(gft({"eval", "--seller", dir.file("missing.txt"), "--buyer", buyer}).code == 2);

  save_distribution(seller, uniform_seller(3));
  CHECK(gft({"eval", "--seller", seller, "--buyer", buyer}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(gft({}).code == 2);
  CHECK(gft({"frobnicate"}).code == 2);
  CHECK(gft({"verify", "--bogus"}).code == 2);
  CHECK(gft({"eval", "--seller", "x"}).code == 2);
  CHECK(gft({"eval", "--seller", "x", "--buyer", "y", "--engine", "gpu"}).code == 2);
  CHECK(gft({"search", "--budget", "0"}).code == 2);
  CHECK(gft({"--help"}).code == 0);
}

TEST_CASE("verify") {
  const auto r = gft({"verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ratio = 2.0749\n") != std::string::npos);
  CHECK(r.out.find("result = PASS") != std::string::npos);
  CHECK(r.out.find("(match)") != std::string::npos);

  const auto two = gft({"verify", "--digits", "2"});
  CHECK(two.code == 0);
  CHECK(two.out.find("ratio = 2.07\n") != std::string::npos);
  CHECK(two.out.find("ratio,2.0749,2.07,") != std::string::npos);

  CHECK(gft({"verify"}).out == r.out);
}

TEST_CASE("verify flags a corrupted seller table") {
  TempDir dir;
  const auto path = dir.file("corrupt.txt");
  auto table = modulated_power_mixture_seller(SellerFamilyParams::worst_case());
  std::vector<std::int64_t> values(table.table().begin(), table.table().end());
  // Move a sliver of mass from the bottom of the support to the top.
  for (std::size_t m = 0; m < 2000; ++m) values[m] = values[m] * 9 / 10;
  save_distribution(path, DiscreteDistribution(Kind::SellerCdf, values));

  const auto r = gft({"verify", "--seller", path});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(r.out.find("(MISMATCH)") != std::string::npos);
  CHECK(r.out.find("quantity,published,computed,abs_diff,status") != std::string::npos);
}

TEST_CASE("search command") {
  TempDir dir;
  const auto cfg = dir.file("search.json");
  write(cfg, R"({"budget": 12, "seed": 2, "H": 300, "restarts": 2})");
  const auto report = dir.file("report.txt");
  const auto best = dir.file("best.txt");
  REQUIRE(gft({"search", "--config", cfg, "--out", report, "--best-out", best}).code == 0);
  const auto text = slurp(report);
  CHECK(text.find("evaluations = 12") != std::string::npos);
  const auto best_table = load_distribution(best);
  CHECK(best_table.H() == 300);
  CHECK(validate(best_table).empty());

  REQUIRE(gft({"search", "--config", cfg, "--out", report}).code == 0);
  CHECK(slurp(report) == text);
}
