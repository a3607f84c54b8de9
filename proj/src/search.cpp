#include "bilateral/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bilateral/mechanisms.hpp"
#include "bilateral/oracles.hpp"

namespace bilateral {

ExactRational evaluate_params(const SellerFamilyParams& p, int H) {
  SellerFamilyParams q = p;
  q.H = H;
  q.check();
  const GftReport report = evaluate(modulated_power_mixture_seller(q), equal_revenue_buyer(H));
  if (!report.ratio) throw std::domain_error("approximation ratio undefined (zero random-offerer GFT)");
  return *report.ratio;
}

std::array<double, 5> to_vector(const SellerFamilyParams& p) {
  return {p.w, p.a1_base, p.a1_amp, p.a1_freq, p.a2};
}

SellerFamilyParams from_vector(const std::array<double, 5>& x, int H) {
  return SellerFamilyParams{x[0], x[1], x[2], x[3], x[4], H};
}

SearchConfig SearchConfig::around_worst_case(double fraction) {
  SearchConfig cfg;
  const auto centre = to_vector(SellerFamilyParams::worst_case());
  for (std::size_t i = 0; i < centre.size(); ++i) {
    cfg.bounds[i] = {centre[i] * (1.0 - fraction), centre[i] * (1.0 + fraction)};
  }
  return cfg;
}

SearchConfig SearchConfig::at_point(const SellerFamilyParams& p) {
  SearchConfig cfg;
  const auto x = to_vector(p);
  for (std::size_t i = 0; i < x.size(); ++i) cfg.bounds[i] = {x[i], x[i]};
  cfg.H = p.H;
  return cfg;
}

void SearchConfig::check() const {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (H < 1 || H > kMaxSupport) throw std::invalid_argument("H out of range");
  if (eval_H && (*eval_H < 1 || *eval_H > H)) throw std::invalid_argument("eval_H must satisfy 1 <= eval_H <= H");
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const auto& b = bounds[i];
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi) {
      throw std::invalid_argument(std::string("empty or non-finite bounds for ") + kFamilyFields[i]);
    }
  }
}

namespace {

constexpr double kShrink = 0.6180339887498949;  // 1 / golden ratio

using Point = std::array<double, 5>;

class CoordinateSearch {
 public:
  explicit CoordinateSearch(const SearchConfig& cfg) : cfg_(cfg) {}

  SearchResult run() {
    for (int r = 0; r < cfg_.restarts && used_ < cfg_.budget; ++r) {
      const int remaining = cfg_.budget - used_;
      stop_at_ = used_ + std::max(1, remaining / (cfg_.restarts - r));
      restart(static_cast<std::uint64_t>(r));
    }
    if (!best_) throw std::runtime_error("search budget exhausted without a successful evaluation");
    return SearchResult{best_->params, best_->ratio, used_, std::move(trace_)};
  }

 private:
  void restart(std::uint64_t r) {
    std::mt19937_64 rng(splitmix64(cfg_.seed + r));
    Point x{};
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      x[i] = cfg_.bounds[i].lo + (cfg_.bounds[i].hi - cfg_.bounds[i].lo) * u;
    }
    auto start = evaluate_batch({x}, cfg_.H, true);
    if (start.empty() || !start[0]) return;
    ExactRational current = *start[0];
    std::optional<ExactRational> current_screen;
    if (cfg_.eval_H) {
      auto s = evaluate_batch({x}, *cfg_.eval_H, false);
      if (s.empty() || !s[0]) return;
      current_screen = s[0];
    }

    Point step{};
    Point tolerance{};
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double width = cfg_.bounds[i].hi - cfg_.bounds[i].lo;
      step[i] = width / 4.0;
      tolerance[i] = 1e-12 + 1e-9 * width;
    }

    while (used_ < stop_at_) {
      bool active = false;
      for (std::size_t i = 0; i < x.size() && used_ < stop_at_; ++i) {
        if (step[i] <= tolerance[i]) continue;
        active = true;

        std::vector<Point> candidates;
        for (double delta : {step[i], -step[i]}) {
          Point y = x;
          y[i] = std::clamp(x[i] + delta, cfg_.bounds[i].lo, cfg_.bounds[i].hi);
          if (y[i] != x[i] && std::find(candidates.begin(), candidates.end(), y) == candidates.end()) {
            candidates.push_back(y);
          }
        }

        std::vector<std::optional<ExactRational>> screens(candidates.size());
        if (cfg_.eval_H && !candidates.empty()) {
          screens = evaluate_batch(candidates, *cfg_.eval_H, false);
          std::vector<Point> promising;
          std::vector<std::optional<ExactRational>> promising_screens;
          for (std::size_t k = 0; k < screens.size(); ++k) {
            if (screens[k] && *screens[k] > *current_screen) {
              promising.push_back(candidates[k]);
              promising_screens.push_back(screens[k]);
            }
          }
          candidates = std::move(promising);
          screens = std::move(promising_screens);
        }

        const auto values = evaluate_batch(candidates, cfg_.H, true);
        std::optional<std::size_t> chosen;
        for (std::size_t k = 0; k < values.size(); ++k) {
          if (!values[k] || *values[k] <= current) continue;
          if (!chosen || *values[k] > *values[*chosen]) chosen = k;
        }
        if (chosen) {
          x = candidates[*chosen];
          current = *values[*chosen];
          if (cfg_.eval_H) current_screen = screens[*chosen];
        } else {
          step[i] *= kShrink;
        }
      }
      if (!active) break;
    }
  }

  // Evaluates up to the remaining allowance, in order; failed evaluations
  // (invalid parameters) count against the budget but yield nullopt.
  std::vector<std::optional<ExactRational>> evaluate_batch(const std::vector<Point>& points, int H, bool record) {
    const int allowance = std::min(cfg_.budget, stop_at_) - used_;
    const std::size_t n = std::min(points.size(), static_cast<std::size_t>(std::max(0, allowance)));
    std::vector<std::optional<ExactRational>> out(n);
    auto work = [&](std::size_t k) {
      try {
        out[k] = evaluate_params(from_vector(points[k], H), H);
      } catch (const std::invalid_argument&) {
      } catch (const std::domain_error&) {
      }
    };
    const std::size_t threads = std::min<std::size_t>(std::max(1u, cfg_.threads), n);
    if (threads <= 1) {
      for (std::size_t k = 0; k < n; ++k) work(k);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          for (std::size_t k = t; k < n; k += threads) work(k);
        });
      }
      for (auto& th : pool) th.join();
    }

    for (std::size_t k = 0; k < n; ++k) {
      ++used_;
      if (!record || !out[k]) continue;
      TraceRecord rec{used_, from_vector(points[k], H), *out[k]};
      if (!best_ || rec.ratio > best_->ratio) best_ = rec;
      trace_.push_back(std::move(rec));
    }
    return out;
  }

  const SearchConfig& cfg_;
  int used_ = 0;
  int stop_at_ = 0;
  std::optional<TraceRecord> best_;
  std::vector<TraceRecord> trace_;
};

std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

SearchResult run_search(const SearchConfig& cfg) {
  cfg.check();
  return CoordinateSearch(cfg).run();
}

std::string format_search_report(const SearchResult& result, int digits) {
  std::ostringstream out;
  out << "[search]\n";
  out << "evaluations = " << result.evaluations << '\n';
  out << "trace_length = " << result.trace.size() << '\n';
  out << "best_ratio = " << result.best_ratio.to_fraction() << '\n';
  out << "best_ratio_decimal = " << result.best_ratio.to_decimal(digits) << '\n';
  out << "[best_params]\n";
  const auto best = to_vector(result.best_params);
  for (std::size_t i = 0; i < best.size(); ++i) out << kFamilyFields[i] << " = " << real(best[i]) << '\n';
  out << "H = " << result.best_params.H << '\n';
  out << "[trace]\n";
  out << "evaluation,w,a1_base,a1_amp,a1_freq,a2,ratio\n";
  for (const auto& rec : result.trace) {
    out << rec.evaluation;
    for (double v : to_vector(rec.params)) out << ',' << real(v);
    out << ',' << rec.ratio.to_decimal(digits) << '\n';
  }
  return out.str();
}

}  // namespace bilateral
