#pragma once

// Run-time statistics over benchmark replicates and their JSON/CSV exports.
//
// Timings are in milliseconds. t_std is the sample standard deviation
// (n - 1 denominator); it is 0 for a single replicate. Gains are ratios of
// the Cholesky statistic to the fast one, so values above 1 favour the fast
// kernel.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace herm3 {

inline constexpr int kStatsSchemaVersion = 1;

struct StatsReport {
  std::string method;
  std::size_t batch_size = 0;
  std::size_t replicates = 0;
  double t_min = 0.0;
  double t_avg = 0.0;
  double t_max = 0.0;
  double t_std = 0.0;
  std::vector<double> timings_ms;

  friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

struct Gain {
  double t_min = 0.0;
  double t_avg = 0.0;
  double t_max = 0.0;

  friend bool operator==(const Gain&, const Gain&) = default;
};

struct BenchSummary {
  std::vector<StatsReport> reports;
  std::optional<Gain> gain;

  friend bool operator==(const BenchSummary&, const BenchSummary&) = default;
};

inline StatsReport summarize(std::string method, std::size_t batch_size, std::vector<double> timings_ms) {
  if (timings_ms.empty()) throw std::invalid_argument("summarize: no timings");
  StatsReport r;
  r.method = std::move(method);
  r.batch_size = batch_size;
  r.replicates = timings_ms.size();
  const auto [lo, hi] = std::minmax_element(timings_ms.begin(), timings_ms.end());
  r.t_min = *lo;
  r.t_max = *hi;
  const double n = static_cast<double>(timings_ms.size());
  r.t_avg = std::accumulate(timings_ms.begin(), timings_ms.end(), 0.0) / n;
  if (timings_ms.size() > 1) {
    double ss = 0.0;
    for (double t : timings_ms) ss += (t - r.t_avg) * (t - r.t_avg);
    r.t_std = std::sqrt(ss / (n - 1.0));
  }
  // Keep t_min <= t_avg <= t_max despite rounding in the mean.
  r.t_avg = std::clamp(r.t_avg, r.t_min, r.t_max);
  r.timings_ms = std::move(timings_ms);
  return r;
}

inline Gain gain(const StatsReport& cholesky, const StatsReport& fast) {
  return {cholesky.t_min / fast.t_min, cholesky.t_avg / fast.t_avg, cholesky.t_max / fast.t_max};
}

/// Runs `fn` `warmup` times untimed, then `replicates` times, returning
/// per-replicate wall-clock durations in milliseconds (steady clock,
/// nanosecond capture).
template <class Fn>
std::vector<double> time_replicates(Fn&& fn, std::size_t warmup, std::size_t replicates) {
  for (std::size_t i = 0; i < warmup; ++i) fn();
  std::vector<double> out;
  out.reserve(replicates);
  for (std::size_t i = 0; i < replicates; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    out.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return out;
}

inline void to_json(nlohmann::json& j, const StatsReport& r) {
  j = {{"method", r.method},       {"batch_size", r.batch_size}, {"replicates", r.replicates},
       {"t_min", r.t_min},         {"t_avg", r.t_avg},           {"t_max", r.t_max},
       {"t_std", r.t_std},         {"timings_ms", r.timings_ms}};
}

inline void from_json(const nlohmann::json& j, StatsReport& r) {
  j.at("method").get_to(r.method);
  j.at("batch_size").get_to(r.batch_size);
  j.at("replicates").get_to(r.replicates);
  j.at("t_min").get_to(r.t_min);
  j.at("t_avg").get_to(r.t_avg);
  j.at("t_max").get_to(r.t_max);
  j.at("t_std").get_to(r.t_std);
  j.at("timings_ms").get_to(r.timings_ms);
}

inline std::string export_json(const BenchSummary& s) {
  nlohmann::json j = {{"schema", "herm3-bench-stats"},
                      {"version", kStatsSchemaVersion},
                      {"units", "ms"},
                      {"std_convention", "sample"},
                      {"reports", s.reports}};
  if (s.gain) j["gain"] = {{"t_min", s.gain->t_min}, {"t_avg", s.gain->t_avg}, {"t_max", s.gain->t_max}};
  return j.dump(2);
}

inline BenchSummary parse_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.value("schema", "") != "herm3-bench-stats") throw std::runtime_error("not a herm3 stats document");
  if (j.value("version", 0) != kStatsSchemaVersion) throw std::runtime_error("unsupported stats schema version");
  BenchSummary s;
  j.at("reports").get_to(s.reports);
  if (j.contains("gain")) {
    const auto& g = j.at("gain");
    s.gain = Gain{g.at("t_min").get<double>(), g.at("t_avg").get<double>(), g.at("t_max").get<double>()};
  }
  return s;
}

/// One row per replicate, a blank line, then a summary block (and a gain
/// row when two methods were compared).
inline std::string export_csv(const BenchSummary& s) {
  auto num = [](double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
  };
  std::ostringstream out;
  out << "method,batch_size,replicate,time_ms\n";
  for (const auto& r : s.reports)
    for (std::size_t i = 0; i < r.timings_ms.size(); ++i)
      out << r.method << ',' << r.batch_size << ',' << i << ',' << num(r.timings_ms[i]) << '\n';
  out << "\nsummary,batch_size,replicates,t_min,t_avg,t_max,t_std\n";
  for (const auto& r : s.reports)
    out << r.method << ',' << r.batch_size << ',' << r.replicates << ',' << num(r.t_min) << ',' << num(r.t_avg)
        << ',' << num(r.t_max) << ',' << num(r.t_std) << '\n';
  if (s.gain) out << "gain,,," << num(s.gain->t_min) << ',' << num(s.gain->t_avg) << ',' << num(s.gain->t_max) << ",\n";
  return out.str();
}

}  // namespace herm3
