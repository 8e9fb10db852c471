// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Informational lines are prefixed with "info".

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "herm3/herm3.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace herm3;
using namespace herm3::testing;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kAccuracyBatch = 100000;

int failures = 0;

void verdict(int id, bool pass, const std::string& detail) {
  std::printf("AC%-2d %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void info(const std::string& text) {
  std::printf("     info  %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "cli.log";
  const std::string cmd = std::string(HERM3_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MatrixBatch accuracy_batch() {
  GenConfig cfg;
  cfg.seed = kSeed;
  cfg.count = kAccuracyBatch;
  return random_hermitian_pd(cfg);
}

void ac1_residual(const MatrixBatch& batch) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto fast = invert_batch(batch, Method::Fast);
  const auto chol = invert_batch(batch, Method::Cholesky);
  std::size_t ok = 0, violations = 0, target_total = 0, target_miss[2] = {0, 0};
  double worst_ratio[2] = {0, 0}, worst_target[2] = {0, 0};
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto m = batch[i];
    const double kappa = condition_estimate(m);
    const double bound = residual_bound(kappa);
    const InvDetResult<double> rs[2] = {fast[i], chol[i]};
    if (kappa <= 1e4) ++target_total;
    for (int k = 0; k < 2; ++k) {
      if (!rs[k].ok()) continue;
      ++ok;
      const double r = residual(m, rs[k].inverse);
      violations += r > bound;
      worst_ratio[k] = std::max(worst_ratio[k], r / (kEps * kappa));
      if (kappa <= 1e4) {
        target_miss[k] += r > 1e-12;
        worst_target[k] = std::max(worst_target[k], r);
      }
    }
  }
  const double secs = seconds_since(t0);
  verdict(1, violations == 0 && ok == 2 * batch.size() && secs <= 30.0,
          fmt("residual <= 64*eps*kappa: %zu/%zu Ok results pass, worst residual/(eps*kappa) fast %.2f "
              "cholesky %.2f, %.1f s",
              ok - violations, 2 * batch.size(), worst_ratio[0], worst_ratio[1], secs));
  info(fmt("target 1e-12 for kappa <= 1e4 (%zu matrices): fast %zu above (max %.3g), cholesky %zu above (max %.3g)",
           target_total, target_miss[0], worst_target[0], target_miss[1], worst_target[1]));
}

void ac2_cross_method(const MatrixBatch& batch) {
  const auto fast = invert_batch(batch, Method::Fast);
  const auto chol = invert_batch(batch, Method::Cholesky);
  std::size_t inv_viol = 0, det_viol = 0, ill = 0;
  double worst_inv = 0, worst_det = 0, worst_inv_well = 0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double ri = max_rel_diff(fast[i].inverse, chol[i].inverse);
    const double rd = rel_diff(fast[i].det, chol[i].det);
    inv_viol += ri > 1e-9;
    det_viol += rd > 1e-10;
    worst_inv = std::max(worst_inv, ri);
    worst_det = std::max(worst_det, rd);
    if (condition_estimate(batch[i]) > 1e6)
      ++ill;
    else
      worst_inv_well = std::max(worst_inv_well, ri);
  }
  verdict(2, inv_viol == 0 && det_viol == 0,
          fmt("fast vs cholesky over %zu matrices: max rel inverse diff %.3g (limit 1e-9, %zu violations), "
              "max rel det diff %.3g (limit 1e-10, %zu violations)",
              batch.size(), worst_inv, inv_viol, worst_det, det_viol));
  info(fmt("%zu matrices have kappa > 1e6; max rel inverse diff over kappa <= 1e6 is %.3g", ill, worst_inv_well));
}

void ac3_golden() {
  const Herm3<double> expected{1.0, 1.0, 2.0, {-0.5, -0.5}, {-0.5, 0.5}, {0.0, -1.0}};
  bool pass = true;
  std::string detail;
  for (Method method : {Method::Fast, Method::Cholesky}) {
    const auto r = invert(kGolden, method);
    const double entry_err = max_rel_diff(r.inverse, expected);
    const long double dense = max_abs_diff_identity(general_multiply(full(kGolden), full(r.inverse)));
    const bool ok = r.ok() && std::abs(r.det - 2.0) <= 1e-14 && entry_err <= 1e-14 && dense <= 1e-14L;
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += fmt("%s det %.17g, max rel entry err %.2g, max|A X - I| %.2Lg", std::string(to_string(method)).c_str(),
                  r.det, entry_err, dense);
  }
  verdict(3, pass, detail);
}

void ac4_op_counts() {
  const OpCounts fast = count_ops(Method::Fast);
  const OpCounts chol = count_ops(Method::Cholesky);
  Xoshiro256 rng(kSeed);
  bool independent = true;
  for (int i = 0; i < 10; ++i) {
    const auto probe = random_hermitian_pd(rng);
    const OpCounts f = count_ops(Method::Fast, probe);
    const OpCounts c = count_ops(Method::Cholesky, probe);
    independent = independent && f.mul == fast.mul && f.add == fast.add && f.div == fast.div &&
                  f.sqrt == fast.sqrt && c.mul == chol.mul && c.add == chol.add && c.div == chol.div &&
                  c.sqrt == chol.sqrt;
  }
  const bool pass = fast.sqrt == 0 && chol.sqrt == 3 && fast.div == 1 && chol.div == 3 &&
                    fast.total() < chol.total() && fast.mul < chol.mul && independent;
  verdict(4, pass,
          fmt("measured fast %llu/%llu/%llu/%llu=%llu, cholesky %llu/%llu/%llu/%llu=%llu (mul/add/div/sqrt), "
              "identical over 10 probes: %s",
              (unsigned long long)fast.mul, (unsigned long long)fast.add, (unsigned long long)fast.div,
              (unsigned long long)fast.sqrt, (unsigned long long)fast.total(), (unsigned long long)chol.mul,
              (unsigned long long)chol.add, (unsigned long long)chol.div, (unsigned long long)chol.sqrt,
              (unsigned long long)chol.total(), independent ? "yes" : "no"));
  const auto pf = published_counts(Method::Fast);
  const auto pc = published_counts(Method::Cholesky);
  info(fmt("published fast %llu/%llu/%llu/%llu=%llu, cholesky %llu/%llu/%llu/%llu=%llu", (unsigned long long)pf.mul,
           (unsigned long long)pf.add, (unsigned long long)pf.div, (unsigned long long)pf.sqrt,
           (unsigned long long)pf.total, (unsigned long long)pc.mul, (unsigned long long)pc.add,
           (unsigned long long)pc.div, (unsigned long long)pc.sqrt, (unsigned long long)pc.total));
}

void ac5_speed() {
  const auto t0 = std::chrono::steady_clock::now();
  GenConfig cfg;
  cfg.seed = kSeed;
  cfg.count = 1000000;
  const MatrixBatch batch = random_hermitian_pd(cfg);
  ResultBatch out(batch.size());
  BenchSummary s;
  for (Method m : {Method::Cholesky, Method::Fast}) {
    auto t = time_replicates([&] { invert_batch(batch, m, 1, out); }, 5, 100);
    s.reports.push_back(summarize(std::string(to_string(m)), batch.size(), std::move(t)));
  }
  s.gain = gain(s.reports[0], s.reports[1]);
  const double secs = seconds_since(t0);
  verdict(5, s.reports[1].t_avg < s.reports[0].t_avg && s.gain->t_avg >= 1.2 && secs <= 300.0,
          fmt("1e6 matrices, 100 replicates after 5 warmup: t_avg cholesky %.3f ms, fast %.3f ms, gain %.2f "
              "(min %.2f, max %.2f), %.1f s",
              s.reports[0].t_avg, s.reports[1].t_avg, s.gain->t_avg, s.gain->t_min, s.gain->t_max, secs));
}

void ac6_real_part_determinant() {
  Xoshiro256 rng(kSeed + 6);
  std::size_t violations = 0;
  double worst_re = 0, worst_im = 0;
  for (std::size_t i = 0; i < kAccuracyBatch; ++i) {
    const auto m = random_hermitian(rng);
    const auto adj = adjugate(m);
    const double det = determinant(m, adj);
    const Cx<double> expansion = Cx<double>(m.a * adj.a_c) + conj(m.b) * adj.b_c + conj(m.c) * adj.c_c;
    const double unit = kEps * det_scale(m);
    const double re = std::abs(expansion.re - det) / unit;
    const double im = std::abs(expansion.im) / unit;
    violations += re > 8.0 || im > 8.0;
    worst_re = std::max(worst_re, re);
    worst_im = std::max(worst_im, im);
  }
  verdict(6, violations == 0,
          fmt("%zu random Hermitian matrices: max |Re diff| %.2f*eps*scale, max |Im| %.2f*eps*scale (limit 8), "
              "%zu violations",
              kAccuracyBatch, worst_re, worst_im, violations));
}

void ac7_determinant_cross_check(const MatrixBatch& batch) {
  std::size_t violations = 0, failed = 0;
  double worst = 0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto m = batch[i];
    const auto ch = cholesky_factorize(m);
    if (!ch.ok()) {
      ++failed;
      continue;
    }
    const double p = ch.factor.l00 * ch.factor.l11 * ch.factor.l22;
    const double r = rel_diff(p * p, determinant(m));
    violations += r > 1e-10;
    worst = std::max(worst, r);
  }
  verdict(7, violations == 0 && failed == 0,
          fmt("%zu PD matrices: max rel diff (l00 l11 l22)^2 vs real-part determinant %.3g (limit 1e-10), "
              "%zu violations, %zu factorization failures",
              batch.size(), worst, violations, failed));
}

void ac8_degeneracy(const fs::path& dir) {
  GenConfig cfg;
  cfg.seed = kSeed;
  cfg.count = kAccuracyBatch;
  cfg.looks = 1;
  cfg.base_covariance = Herm3<double>{2.0, 4.0, 5.0, {0.5, 0.3}, {0.1, -0.2}, {1.0, 0.4}};
  const auto batch = simulate_multilook(cfg);
  const auto fast = invert_batch(batch, Method::Fast);
  const auto chol = invert_batch(batch, Method::Cholesky);
  const std::size_t singular = fast.count(Status::Singular);
  const std::size_t not_pd = chol.count(Status::NotPositiveDefinite);

  const std::string in = (dir / "looks1.hm3b").string();
  const auto gen = cli("generate --mode multilook --looks 1 --count 10000 --seed 1 --out " + in, dir);
  const auto inv_fast = cli("invert --method fast --in " + in + " --out " + (dir / "rf.hm3b").string(), dir);
  const auto inv_chol = cli("invert --method cholesky --in " + in + " --out " + (dir / "rc.hm3b").string(), dir);
  const bool cli_ok = gen.code == 0 && inv_fast.code == 0 && inv_chol.code == 0 &&
                      inv_fast.out.find("singular 10000") != std::string::npos &&
                      inv_chol.out.find("not-positive-definite 10000") != std::string::npos;
  verdict(8, singular == batch.size() && not_pd == batch.size() && cli_ok,
          fmt("looks=1 library batch of %zu: fast Singular %zu, cholesky NotPositiveDefinite %zu; CLI invert of "
              "10000 exit codes %d/%d with all failures reported as statuses",
              batch.size(), singular, not_pd, inv_fast.code, inv_chol.code));
}

void ac9_determinism(const fs::path& dir) {
  bool pass = true;
  std::string first_gen, first_fast;
  for (int w : {1, 2, 8}) {
    const std::string g = (dir / fmt("g%d.hm3b", w)).string();
    const std::string r = (dir / fmt("r%d.hm3b", w)).string();
    const std::string ws = std::to_string(w);
    pass = pass && cli("generate --mode multilook --looks 4 --count 50000 --seed 99 --workers " + ws + " --out " + g,
                       dir).code == 0;
    pass = pass && cli("invert --in " + g + " --out " + r + " --workers " + ws, dir).code == 0;
    if (w == 1) {
      first_gen = slurp(g);
      first_fast = slurp(r);
    } else {
      pass = pass && slurp(g) == first_gen && slurp(r) == first_fast;
    }
  }
  // HM3B matrices and results, and the stats JSON.
  std::istringstream gin(first_gen);
  const MatrixBatch b = hm3b::read_batch(gin);
  std::ostringstream gout;
  hm3b::write_batch(b, gout);
  std::istringstream rin(first_fast);
  const ResultBatch rb = hm3b::read_results(rin);
  std::ostringstream rout;
  hm3b::write_results(rb, rout);
  const bool binary_round_trip = gout.str() == first_gen && rout.str() == first_fast;

  BenchSummary s;
  Xoshiro256 rng(kSeed);
  std::vector<double> t1, t2;
  for (int i = 0; i < 100; ++i) {
    t1.push_back(100.0 * rng.unit());
    t2.push_back(50.0 * rng.unit());
  }
  s.reports.push_back(summarize("cholesky", 1000000, t1));
  s.reports.push_back(summarize("fast", 1000000, t2));
  s.gain = gain(s.reports[0], s.reports[1]);
  const bool json_round_trip = parse_json(export_json(s)) == s;

  verdict(9, pass && binary_round_trip && json_round_trip,
          fmt("generate+invert bit-identical at workers {1,2,8}: %s; HM3B round trip bit-exact: %s; stats JSON "
              "round trip value-exact: %s",
              pass ? "yes" : "no", binary_round_trip ? "yes" : "no", json_round_trip ? "yes" : "no"));
}

void ac10_multilook_mean() {
  GenConfig cfg;
  cfg.seed = kSeed;
  cfg.count = 10000;
  cfg.looks = 3;
  const auto batch = simulate_multilook(cfg);
  double sum[9] = {};
  for (std::size_t i = 0; i < batch.size(); ++i) {
    double v[9];
    store_matrix(batch[i], v);
    for (int k = 0; k < 9; ++k) sum[k] += v[k];
  }
  const double identity[9] = {1, 0, 0, 0, 0, 1, 0, 0, 1};
  const double limit = 5.0 / std::sqrt(3.0 * 1e4);
  double worst = 0;
  for (int k = 0; k < 9; ++k) worst = std::max(worst, std::abs(sum[k] / batch.size() - identity[k]));
  verdict(10, worst < limit,
          fmt("Sigma = I, looks = 3, 1e4 samples: max entrywise |mean - Sigma| %.4f (limit %.4f)", worst, limit));
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "herm3_acceptance";
  fs::create_directories(dir);
  const MatrixBatch batch = accuracy_batch();
  ac1_residual(batch);
  ac2_cross_method(batch);
  ac3_golden();
  ac4_op_counts();
  ac5_speed();
  ac6_real_part_determinant();
  ac7_determinant_cross_check(batch);
  ac8_degeneracy(dir);
  ac9_determinism(dir);
  ac10_multilook_mean();
  fs::remove_all(dir);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
