// herm3: generate, invert, benchmark and audit batches of 3x3 Hermitian
// matrices.
//
// Exit codes: 0 success, 1 I/O or format failure, 2 usage error,
// 3 accuracy bound violated (compare).

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "herm3/herm3.hpp"

namespace {

using namespace herm3;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAccuracy = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_csv(const std::string& path) { return ends_with(path, ".csv"); }

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

MatrixBatch load_matrices(const std::string& path) {
  auto in = open_in(path);
  return is_csv(path) ? csv::read_csv_batch(in) : hm3b::read_batch(in);
}

void save_matrices(const MatrixBatch& b, const std::string& path) {
  auto out = open_out(path);
  if (is_csv(path))
    csv::write_csv_batch(b, out);
  else
    hm3b::write_batch(b, out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_text(const std::string& text, const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  auto out = open_out(*path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  out.flush();
  if (!out) throw IoError("write to '" + *path + "' failed");
}

Method parse_method(const std::string& s) { return s == "cholesky" ? Method::Cholesky : Method::Fast; }

std::vector<Method> parse_methods(const std::string& s) {
  if (s == "both") return {Method::Cholesky, Method::Fast};
  return {parse_method(s)};
}

// Shared generation flags for `generate` and `bench`.
struct GenOptions {
  std::string mode = "uniform";
  std::size_t count = 1000000;
  std::size_t looks = 1;
  std::uint64_t seed = 0;
  std::vector<double> sigma;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--mode", mode, "Generator: uniform (G^H G, uniform entries) or multilook")
        ->check(CLI::IsMember({"uniform", "multilook"}))
        ->capture_default_str();
    cmd.add_option("--count", count, "Number of matrices")
        ->check(CLI::PositiveNumber)
        ->envname("HERM3_COUNT")
        ->capture_default_str();
    cmd.add_option("--looks", looks, "Looks per matrix in multilook mode")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--seed", seed, "Generator seed")->envname("HERM3_SEED")->capture_default_str();
    cmd.add_option("--sigma", sigma,
                   "Population covariance for multilook mode as 9 numbers "
                   "a,re_b,im_b,re_c,im_c,d,re_e,im_e,f (default identity)")
        ->expected(9)
        ->delimiter(',');
  }

  GenConfig config(std::size_t workers) const {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.count = count;
    cfg.looks = looks;
    cfg.workers = workers;
    if (!sigma.empty()) cfg.base_covariance = load_matrix(sigma.data());
    return cfg;
  }

  MatrixBatch generate(std::size_t workers) const {
    try {
      const GenConfig cfg = config(workers);
      return mode == "uniform" ? random_hermitian_pd(cfg) : simulate_multilook(cfg);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  nlohmann::json manifest() const {
    nlohmann::json j = {{"generator", "xoshiro256**"},
                        {"seeding", "per-matrix stream keyed by (seed, index)"},
                        {"mode", mode},
                        {"count", count},
                        {"seed", seed},
                        {"format", "HM3B"},
                        {"format_version", hm3b::kVersion}};
    if (mode == "multilook") {
      j["looks"] = looks;
      j["sigma"] = sigma.empty() ? std::vector<double>{1, 0, 0, 0, 0, 1, 0, 0, 1} : sigma;
    }
    return j;
  }
};

int cmd_generate(const GenOptions& gen, const std::string& out, std::size_t workers) {
  const MatrixBatch batch = gen.generate(workers);
  save_matrices(batch, out);
  write_text(gen.manifest().dump(2), out + ".json");
  std::printf("wrote %zu matrices to %s\n", batch.size(), out.c_str());
  return kExitOk;
}

void print_summary(std::uint64_t processed, std::uint64_t singular, std::uint64_t not_pd) {
  std::printf("processed %llu  ok %llu  singular %llu  not-positive-definite %llu\n",
              static_cast<unsigned long long>(processed),
              static_cast<unsigned long long>(processed - singular - not_pd),
              static_cast<unsigned long long>(singular), static_cast<unsigned long long>(not_pd));
}

int cmd_invert(const std::string& in_path, const std::string& out_path, Method method, std::size_t workers,
               std::size_t chunk) {
  if (chunk > 0 && !is_csv(in_path)) {
    auto in = open_in(in_path);
    auto out = open_out(out_path);
    const StreamSummary s = stream_process(in, out, chunk, method, workers);
    out.flush();
    if (!out) throw IoError("write to '" + out_path + "' failed");
    print_summary(s.processed, s.singular, s.not_positive_definite);
    return kExitOk;
  }
  const MatrixBatch batch = load_matrices(in_path);
  const ResultBatch results = invert_batch(batch, method, workers);
  auto out = open_out(out_path);
  hm3b::write_results(results, out);
  out.flush();
  if (!out) throw IoError("write to '" + out_path + "' failed");
  print_summary(results.size(), results.count(Status::Singular), results.count(Status::NotPositiveDefinite));
  return kExitOk;
}

struct BenchOptions {
  std::string methods = "both";
  std::optional<std::string> in;
  std::size_t replicates = 100;
  std::size_t warmup = 5;
  std::size_t workers = 1;
  std::optional<std::string> exporter;
  std::optional<std::string> out;
};

void print_table(const BenchSummary& s, std::size_t warmup, std::size_t workers, std::FILE* f) {
  const auto& r0 = s.reports.front();
  std::fprintf(f, "batch %zu matrices, %zu replicates after %zu warmup, %zu worker(s); times in ms\n",
               r0.batch_size, r0.replicates, warmup, workers);
  std::fprintf(f, "%-10s", "statistic");
  for (const auto& r : s.reports) std::fprintf(f, " %12s", r.method.c_str());
  if (s.gain) std::fprintf(f, " %8s", "gain");
  std::fprintf(f, "\n");
  auto row = [&](const char* name, double StatsReport::*field, const double* gain) {
    std::fprintf(f, "%-10s", name);
    for (const auto& r : s.reports) std::fprintf(f, " %12.3f", r.*field);
    if (s.gain) {
      if (gain)
        std::fprintf(f, " %8.2f", *gain);
      else
        std::fprintf(f, " %8s", "--");
    }
    std::fprintf(f, "\n");
  };
  row("t_min", &StatsReport::t_min, s.gain ? &s.gain->t_min : nullptr);
  row("t_avg", &StatsReport::t_avg, s.gain ? &s.gain->t_avg : nullptr);
  row("t_max", &StatsReport::t_max, s.gain ? &s.gain->t_max : nullptr);
  row("t_std", &StatsReport::t_std, nullptr);
}

int cmd_bench(const BenchOptions& opt, const GenOptions& gen) {
  MatrixBatch batch;
  ResultBatch results;
  try {
    batch = opt.in ? load_matrices(*opt.in) : gen.generate(opt.workers);
    results = ResultBatch(batch.size());
  } catch (const std::bad_alloc&) {
    throw IoError(
        "not enough memory to hold the batch; reduce --count or process the file with "
        "`herm3 invert --chunk N` to stream it");
  }

  BenchSummary summary;
  for (Method m : parse_methods(opt.methods)) {
    auto timings =
        time_replicates([&] { invert_batch(batch, m, opt.workers, results); }, opt.warmup, opt.replicates);
    summary.reports.push_back(summarize(std::string(to_string(m)), batch.size(), std::move(timings)));
  }
  if (summary.reports.size() == 2) summary.gain = gain(summary.reports[0], summary.reports[1]);

  const bool export_to_stdout = opt.exporter && !opt.out;
  print_table(summary, opt.warmup, opt.workers, export_to_stdout ? stderr : stdout);
  if (opt.exporter) write_text(*opt.exporter == "csv" ? export_csv(summary) : export_json(summary), opt.out);
  return kExitOk;
}

int cmd_compare(const std::string& in_path) {
  const MatrixBatch batch = load_matrices(in_path);
  ErrorAccumulator fast_acc, chol_acc;
  std::size_t skipped = 0, fast_singular = 0, chol_not_pd = 0, violations_fast = 0, violations_chol = 0;
  double worst_ratio_fast = 0.0, worst_ratio_chol = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto m = batch[i];
    const auto fast = fast_invert(m);
    const auto chol = cholesky_invert(m);
    const auto ref = oracle_invert(m);
    fast_singular += fast.status == Status::Singular;
    chol_not_pd += chol.status == Status::NotPositiveDefinite;
    if (!fast.ok() || !chol.ok() || !ref.ok()) {
      ++skipped;
      continue;
    }
    fast_acc.add(fast, ref, m);
    chol_acc.add(chol, ref, m);
    const double kappa = condition_estimate(m);
    const double bound = residual_bound(kappa);
    const double rf = residual(m, fast.inverse);
    const double rc = residual(m, chol.inverse);
    violations_fast += rf > bound;
    violations_chol += rc > bound;
    const double unit = std::numeric_limits<double>::epsilon() * kappa;
    worst_ratio_fast = std::max(worst_ratio_fast, rf / unit);
    worst_ratio_chol = std::max(worst_ratio_chol, rc / unit);
  }
  const ErrorStats f = fast_acc.finish();
  const ErrorStats c = chol_acc.finish();

  std::printf("matrices %zu  compared %zu  skipped %zu (fast singular %zu, cholesky not-pd %zu)\n", batch.size(),
              f.matrices, skipped, fast_singular, chol_not_pd);
  std::printf("%-16s %14s %14s\n", "metric", "fast", "cholesky");
  std::printf("%-16s %14.4e %14.4e\n", "max_abs_err", f.max_abs_err, c.max_abs_err);
  std::printf("%-16s %14.4e %14.4e\n", "max_rel_err", f.max_rel_err, c.max_rel_err);
  std::printf("%-16s %14.4e %14.4e\n", "median_rel_err", f.median_rel_err, c.median_rel_err);
  std::printf("%-16s %14.4e %14.4e\n", "max_residual", f.max_residual, c.max_residual);
  for (std::size_t k = 0; k < kEntryNames.size(); ++k)
    std::printf("max_rel %-8s %14.4e %14.4e\n", kEntryNames[k], f.entries[k].max_rel, c.entries[k].max_rel);
  std::printf("%-16s %14.2f %14.2f\n", "resid/(eps*kap)", worst_ratio_fast, worst_ratio_chol);
  std::printf("residual bound %.0f*eps*kappa: fast %zu violation(s), cholesky %zu violation(s)\n",
              kResidualBoundFactor, violations_fast, violations_chol);
  return (violations_fast + violations_chol) == 0 ? kExitOk : kExitAccuracy;
}

int cmd_count_ops(const std::optional<std::string>& exporter, const std::optional<std::string>& out) {
  struct Row {
    Method method;
    OpCounts ours;
    PublishedCounts published;
  };
  const Row rows[] = {{Method::Cholesky, count_ops(Method::Cholesky), published_counts(Method::Cholesky)},
                      {Method::Fast, count_ops(Method::Fast), published_counts(Method::Fast)}};

  if (exporter && *exporter == "json") {
    nlohmann::json j = {{"convention",
                         {{"complex_mul", "4 mul + 2 add"},
                          {"real_times_complex", "2 mul"},
                          {"complex_add_sub", "2 add"},
                          {"squared_magnitude", "2 mul + 1 add"},
                          {"square", "1 mul"},
                          {"reciprocal", "1 div"},
                          {"sqrt", "1 sqrt"},
                          {"status_checks", "not counted"}}}};
    for (const auto& r : rows) {
      j["methods"][std::string(to_string(r.method))] = {
          {"measured",
           {{"mul", r.ours.mul}, {"add", r.ours.add}, {"div", r.ours.div}, {"sqrt", r.ours.sqrt},
            {"total", r.ours.total()}}},
          {"published",
           {{"mul", r.published.mul}, {"add", r.published.add}, {"div", r.published.div}, {"sqrt", r.published.sqrt},
            {"total", r.published.total}}}};
    }
    write_text(j.dump(2), out);
    return kExitOk;
  }
  if (exporter && *exporter == "csv") {
    std::ostringstream os;
    os << "method,source,mul,add,div,sqrt,total\n";
    for (const auto& r : rows) {
      os << to_string(r.method) << ",measured," << r.ours.mul << ',' << r.ours.add << ',' << r.ours.div << ','
         << r.ours.sqrt << ',' << r.ours.total() << '\n';
      os << to_string(r.method) << ",published," << r.published.mul << ',' << r.published.add << ',' << r.published.div << ','
         << r.published.sqrt << ',' << r.published.total << '\n';
    }
    write_text(os.str(), out);
    return kExitOk;
  }

  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %-10s %6s %6s %6s %6s %6s\n", "method", "source", "x*y", "x+y", "1/x",
                "sqrt", "total");
  os << line;
  for (const auto& r : rows) {
    const std::string name(to_string(r.method));
    std::snprintf(line, sizeof line, "%-10s %-10s %6llu %6llu %6llu %6llu %6llu\n", name.c_str(), "measured",
                  static_cast<unsigned long long>(r.ours.mul), static_cast<unsigned long long>(r.ours.add),
                  static_cast<unsigned long long>(r.ours.div), static_cast<unsigned long long>(r.ours.sqrt),
                  static_cast<unsigned long long>(r.ours.total()));
    os << line;
    std::snprintf(line, sizeof line, "%-10s %-10s %6llu %6llu %6llu %6llu %6llu\n", name.c_str(), "published",
                  static_cast<unsigned long long>(r.published.mul), static_cast<unsigned long long>(r.published.add),
                  static_cast<unsigned long long>(r.published.div), static_cast<unsigned long long>(r.published.sqrt),
                  static_cast<unsigned long long>(r.published.total));
    os << line;
    auto mark = [](std::uint64_t a, std::uint64_t b) { return a == b ? "=" : "!"; };
    std::snprintf(line, sizeof line, "%-10s %-10s %6s %6s %6s %6s %6s\n", "", "agree", mark(r.ours.mul, r.published.mul),
                  mark(r.ours.add, r.published.add), mark(r.ours.div, r.published.div), mark(r.ours.sqrt, r.published.sqrt),
                  mark(r.ours.total(), r.published.total));
    os << line;
  }
  const auto& chol = rows[0].ours;
  const auto& fast = rows[1].ours;
  std::snprintf(line, sizeof line, "fast total %llu vs cholesky total %llu: %.1f%% fewer operations\n",
                static_cast<unsigned long long>(fast.total()), static_cast<unsigned long long>(chol.total()),
                100.0 * (1.0 - static_cast<double>(fast.total()) / static_cast<double>(chol.total())));
  os << line;
  os << "convention: complex mul = 4 mul + 2 add, real*complex = 2 mul, |z|^2 = 2 mul + 1 add, "
        "squaring = 1 mul; status checks not counted\n";
  write_text(os.str(), out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batched inverse and determinant of 3x3 Hermitian (PolSAR covariance) matrices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "herm3 1.0");
  app.footer(
      "Environment defaults: HERM3_SEED, HERM3_WORKERS, HERM3_COUNT, HERM3_REPLICATES, HERM3_WARMUP, HERM3_CHUNK.\n"
      "Exit codes: 0 success, 1 I/O or format error, 2 usage error, 3 accuracy bound violated.");

  std::size_t workers = 1;
  std::string method = "fast";
  std::string in_path, out_path;
  std::optional<std::string> export_format, opt_out;

  GenOptions gen;
  auto* generate = app.add_subcommand("generate", "Generate a seeded batch (HM3B, or CSV for *.csv) plus a JSON manifest");
  gen.add_to(*generate);
  generate->add_option("--out", out_path, "Output file")->required();
  generate->add_option("--workers", workers, "Generator threads")->check(CLI::PositiveNumber)->envname("HERM3_WORKERS");

  std::size_t chunk = 0;
  auto* invert = app.add_subcommand("invert", "Invert every matrix of a batch into an HM3B result file");
  invert->add_option("--in", in_path, "Input batch (HM3B, or CSV for *.csv)")->required()->check(CLI::ExistingFile);
  invert->add_option("--out", out_path, "Output HM3B result file")->required();
  invert->add_option("--method", method, "Kernel")->check(CLI::IsMember({"fast", "cholesky"}))->capture_default_str();
  invert->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber)->envname("HERM3_WORKERS");
  invert->add_option("--chunk", chunk, "Stream HM3B input in chunks of this many matrices (0 = load whole file)")
      ->envname("HERM3_CHUNK");

  BenchOptions bench_opt;
  GenOptions bench_gen;
  auto* bench = app.add_subcommand("bench", "Time replicated batch inversions and report t_min/t_avg/t_max/t_std");
  bench->add_option("--method", bench_opt.methods, "Kernel(s) to time")
      ->check(CLI::IsMember({"fast", "cholesky", "both"}))
      ->capture_default_str();
  bench->add_option("--in", bench_opt.in, "Benchmark this batch instead of generating one")->check(CLI::ExistingFile);
  bench_gen.add_to(*bench);
  bench->add_option("--replicates", bench_opt.replicates, "Timed replicates per method")
      ->check(CLI::PositiveNumber)
      ->envname("HERM3_REPLICATES")
      ->capture_default_str();
  bench->add_option("--warmup", bench_opt.warmup, "Untimed warmup runs per method")
      ->envname("HERM3_WARMUP")
      ->capture_default_str();
  bench->add_option("--workers", bench_opt.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->envname("HERM3_WORKERS");
  bench->add_option("--export", bench_opt.exporter, "Export statistics")->check(CLI::IsMember({"json", "csv"}));
  bench->add_option("--out", bench_opt.out, "Export destination (stdout if omitted)");

  auto* compare = app.add_subcommand("compare", "Compare both kernels against the extended-precision oracle");
  compare->add_option("--in", in_path, "Input batch")->required()->check(CLI::ExistingFile);

  auto* count = app.add_subcommand("count-ops", "Audit real-arithmetic operation counts of both kernels");
  count->add_option("--export", export_format, "Export format")->check(CLI::IsMember({"json", "csv"}));
  count->add_option("--out", opt_out, "Output file (stdout if omitted)");

  auto* convert = app.add_subcommand("convert", "Convert a batch between CSV and HM3B (format chosen by extension)");
  convert->add_option("--in", in_path, "Input batch")->required()->check(CLI::ExistingFile);
  convert->add_option("--out", out_path, "Output batch")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen, out_path, workers);
    if (*invert) return cmd_invert(in_path, out_path, parse_method(method), workers, chunk);
    if (*bench) return cmd_bench(bench_opt, bench_gen);
    if (*compare) return cmd_compare(in_path);
    if (*count) return cmd_count_ops(export_format, opt_out);
    if (*convert) {
      save_matrices(load_matrices(in_path), out_path);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return kExitUsage;
}
