#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "bilateral/config.hpp"
#include "bilateral/distribution.hpp"
#include "bilateral/generators.hpp"
#include "bilateral/mechanisms.hpp"
#include "bilateral/oracles.hpp"
#include "bilateral/search.hpp"

namespace py = pybind11;
using namespace bilateral;

namespace {

// Exact values cross the boundary as fractions.Fraction.
py::object to_fraction(const ExactRational& q) {
  std::string text = q.to_fraction();
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  return py::module_::import("fractions").attr("Fraction")(text);
}

py::object maybe_fraction(const std::optional<ExactRational>& q) { return q ? to_fraction(*q) : py::none(); }

py::dict report_dict(const GftReport& r) {
  py::dict d;
  d["fb"] = to_fraction(r.fb);
  d["so"] = to_fraction(r.so);
  d["bo"] = to_fraction(r.bo);
  d["ro"] = to_fraction(r.ro);
  d["ratio"] = maybe_fraction(r.ratio);
  return d;
}

py::dict estimate_dict(const McEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["std_error"] = e.std_error;
  d["samples"] = e.samples;
  d["seed"] = e.seed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact gains-from-trade evaluation for bilateral trade on a discrete grid";
  m.attr("SCALE") = kScale;
  m.attr("MAX_SUPPORT") = kMaxSupport;
  m.attr("WORST_CASE_SELLER_HASH") = kWorstCaseSellerHash;

  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::enum_<Kind>(m, "Kind").value("SELLER_CDF", Kind::SellerCdf).value("BUYER_SF", Kind::BuyerSf);
  py::enum_<RealPrecision>(m, "RealPrecision")
      .value("BINARY64", RealPrecision::Binary64)
      .value("EXTENDED", RealPrecision::Extended);

  py::class_<DiscreteDistribution>(m, "Distribution")
      .def(py::init<Kind, std::vector<std::int64_t>>(), py::arg("kind"), py::arg("table"))
      .def_property_readonly("kind", &DiscreteDistribution::kind)
      .def_property_readonly("H", &DiscreteDistribution::H)
      .def_property_readonly("table", [](const DiscreteDistribution& d) {
        return std::vector<std::int64_t>(d.table().begin(), d.table().end());
      })
      .def("__len__", [](const DiscreteDistribution& d) { return d.table().size(); })
      .def("__getitem__", [](const DiscreteDistribution& d, int i) {
        if (i < 0 || i > d.H()) throw py::index_error();
        return d[i];
      })
      .def("__eq__", [](const DiscreteDistribution& a, const DiscreteDistribution& b) { return a == b; })
      .def("violations", [](const DiscreteDistribution& d) {
        std::vector<std::string> out;
        for (const auto& v : validate(d)) out.push_back(v.message);
        return out;
      })
      .def("content_hash", [](const DiscreteDistribution& d) { return content_hash(d); })
      .def("format", [](const DiscreteDistribution& d) { return format_distribution(d); })
      .def("__repr__", [](const DiscreteDistribution& d) {
        return "<Distribution " + to_string(d.kind()) + " H=" + std::to_string(d.H()) + ">";
      });

  m.def("load_distribution", &load_distribution, py::arg("path"));
  m.def("save_distribution", &save_distribution, py::arg("path"), py::arg("distribution"));
  m.def("parse_distribution", [](const std::string& text) {
    std::istringstream in(text);
    return read_distribution(in);
  });
  m.def("round_scaled", &round_scaled, py::arg("probability"), py::arg("precision") = RealPrecision::Binary64);

  py::class_<SellerFamilyParams>(m, "FamilyParams")
      .def(py::init([](double w, double a1_base, double a1_amp, double a1_freq, double a2, int H) {
             return SellerFamilyParams{w, a1_base, a1_amp, a1_freq, a2, H};
           }),
           py::arg("w") = 0.20, py::arg("a1_base") = 0.15, py::arg("a1_amp") = 0.05, py::arg("a1_freq") = 2.0,
           py::arg("a2") = 4.0, py::arg("H") = kMaxSupport)
      .def_readwrite("w", &SellerFamilyParams::w)
      .def_readwrite("a1_base", &SellerFamilyParams::a1_base)
      .def_readwrite("a1_amp", &SellerFamilyParams::a1_amp)
      .def_readwrite("a1_freq", &SellerFamilyParams::a1_freq)
      .def_readwrite("a2", &SellerFamilyParams::a2)
      .def_readwrite("H", &SellerFamilyParams::H)
      .def_static("worst_case", &SellerFamilyParams::worst_case)
      .def("problems", &SellerFamilyParams::problems)
      .def("to_json", [](const SellerFamilyParams& p) { return family_config_json(p); })
      .def_static("from_json", &parse_family_config)
      .def("__eq__", [](const SellerFamilyParams& a, const SellerFamilyParams& b) { return a == b; })
      .def("__repr__", [](const SellerFamilyParams& p) { return "<FamilyParams " + family_config_json(p) + ">"; });

  m.def("equal_revenue_buyer", &equal_revenue_buyer, py::arg("H") = kMaxSupport);
  m.def("uniform_seller", &uniform_seller, py::arg("H"));
  m.def("point_mass", &point_mass, py::arg("value"), py::arg("kind"), py::arg("H"));
  m.def("mixture_seller", &modulated_power_mixture_seller, py::arg("params") = SellerFamilyParams::worst_case(),
        py::arg("precision") = RealPrecision::Binary64);
  m.def("mixture_seller_real", &modulated_power_mixture_real, py::arg("params") = SellerFamilyParams::worst_case());

  m.def("seller_prices", [](const DiscreteDistribution& sf_b) { return optimal_seller_prices(sf_b).prices; });
  m.def("buyer_prices", [](const DiscreteDistribution& cdf_s) { return optimal_buyer_prices(cdf_s).prices; });

  m.def(
      "evaluate",
      [](const DiscreteDistribution& s, const DiscreteDistribution& b, bool full_scan) {
        return report_dict(evaluate(s, b, {full_scan ? PriceScan::Full : PriceScan::Monotone}));
      },
      py::arg("seller"), py::arg("buyer"), py::arg("full_scan") = false);
  m.def(
      "reference_evaluate",
      [](const DiscreteDistribution& s, const DiscreteDistribution& b) { return report_dict(reference_evaluate(s, b)); },
      py::arg("seller"), py::arg("buyer"));
  m.def(
      "format_report",
      [](const DiscreteDistribution& s, const DiscreteDistribution& b, int digits) {
        return format_report(evaluate(s, b), digits);
      },
      py::arg("seller"), py::arg("buyer"), py::arg("digits") = 4);
  m.def(
      "monte_carlo",
      [](const DiscreteDistribution& s, const DiscreteDistribution& b, std::uint64_t samples, std::uint64_t seed,
         unsigned threads) {
        McReport r;
        {
          py::gil_scoped_release release;
          r = monte_carlo_gft(s, b, optimal_seller_prices(b), optimal_buyer_prices(s),
                              McOptions{samples, seed, threads});
        }
        py::dict d;
        d["fb"] = estimate_dict(r.fb);
        d["so"] = estimate_dict(r.so);
        d["bo"] = estimate_dict(r.bo);
        d["ro"] = estimate_dict(r.ro);
        return d;
      },
      py::arg("seller"), py::arg("buyer"), py::arg("samples") = 1'000'000, py::arg("seed") = 0,
      py::arg("threads") = 1);

  m.def(
      "evaluate_params", [](const SellerFamilyParams& p, int H) { return to_fraction(evaluate_params(p, H)); },
      py::arg("params"), py::arg("H") = kMaxSupport);
  m.def(
      "run_search",
      [](const std::string& config_json) {
        const SearchConfig cfg = parse_search_config(config_json);
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = run_search(cfg);
        }
        py::dict d;
        d["best_params"] = r.best_params;
        d["best_ratio"] = to_fraction(r.best_ratio);
        d["evaluations"] = r.evaluations;
        py::list trace;
        for (const auto& rec : r.trace) trace.append(py::make_tuple(rec.evaluation, rec.params, to_fraction(rec.ratio)));
        d["trace"] = trace;
        return d;
      },
      py::arg("config_json") = "{}");
}
