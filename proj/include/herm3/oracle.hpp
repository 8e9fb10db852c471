#pragma once

// Extended-precision reference results and error metrics against them.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/float128.hpp>

#include "herm3/dense.hpp"
#include "herm3/kernels.hpp"

namespace herm3 {

/// IEEE binary128: 113-bit significand, more than twice double's 53.
using Quad = boost::multiprecision::float128;

/// Adjugate algorithm evaluated in binary128, rounded to double.
inline InvDetResult<double> oracle_invert(const Herm3<double>& m) {
  return convert<double>(fast_invert(convert<Quad>(m)));
}

/// kappa_inf(M) using the extended-precision inverse. Infinite when the
/// oracle reports a singular matrix.
inline double condition_estimate(const Herm3<double>& m) {
  const auto q = convert<Quad>(m);
  const auto inv = fast_invert(q);
  if (!inv.ok()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(condition_inf(q, inv.inverse));
}

/// Residual bound used throughout: residual(M, X) <= 64 eps kappa_inf(M).
inline constexpr double kResidualBoundFactor = 64.0;

inline double residual_bound(double kappa) {
  return kResidualBoundFactor * std::numeric_limits<double>::epsilon() * kappa;
}

/// Index of the quantities compared by ErrorStats.
enum class Entry { A, B, C, D, E, F, Det };
inline constexpr std::array<const char*, 7> kEntryNames{"a_i", "b_i", "c_i", "d_i", "e_i", "f_i", "det"};

struct EntryError {
  double max_abs = 0.0;
  double max_rel = 0.0;
};

struct ErrorStats {
  std::size_t matrices = 0;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  double median_rel_err = 0.0;  // median over matrices of the per-matrix max_rel_err
  double max_residual = 0.0;
  std::array<EntryError, 7> entries{};
};

namespace detail {

inline double rel_denominator(double ref_magnitude) {
  return std::max(ref_magnitude, std::numeric_limits<double>::epsilon());
}

inline std::array<std::pair<double, double>, 7> entry_errors(const InvDetResult<double>& x,
                                                             const InvDetResult<double>& ref) {
  auto real_err = [](double v, double r) {
    const double abs_err = std::abs(v - r);
    return std::pair{abs_err, abs_err / rel_denominator(std::abs(r))};
  };
  auto cx_err = [](const Cx<double>& v, const Cx<double>& r) {
    const double abs_err = herm3::abs(v - r);
    return std::pair{abs_err, abs_err / rel_denominator(herm3::abs(r))};
  };
  const auto& a = x.inverse;
  const auto& b = ref.inverse;
  return {real_err(a.a, b.a), cx_err(a.b, b.b), cx_err(a.c, b.c), real_err(a.d, b.d),
          cx_err(a.e, b.e),   real_err(a.f, b.f), real_err(x.det, ref.det)};
}

}  // namespace detail

/// Accumulates ErrorStats over many matrices.
class ErrorAccumulator {
 public:
  void add(const InvDetResult<double>& result, const InvDetResult<double>& reference, const Herm3<double>& m) {
    if (result.status != reference.status)
      throw std::invalid_argument("error_metrics: result and reference statuses differ");
    if (!result.ok()) throw std::invalid_argument("error_metrics: results must have status ok");
    const auto errs = detail::entry_errors(result, reference);
    double worst_rel = 0.0;
    for (std::size_t k = 0; k < errs.size(); ++k) {
      auto& e = stats_.entries[k];
      e.max_abs = std::max(e.max_abs, errs[k].first);
      e.max_rel = std::max(e.max_rel, errs[k].second);
      stats_.max_abs_err = std::max(stats_.max_abs_err, errs[k].first);
      worst_rel = std::max(worst_rel, errs[k].second);
    }
    stats_.max_rel_err = std::max(stats_.max_rel_err, worst_rel);
    stats_.max_residual = std::max(stats_.max_residual, residual(m, result.inverse));
    per_matrix_rel_.push_back(worst_rel);
    ++stats_.matrices;
  }

  ErrorStats finish() const {
    ErrorStats s = stats_;
    if (!per_matrix_rel_.empty()) {
      std::vector<double> v = per_matrix_rel_;
      const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
      std::nth_element(v.begin(), mid, v.end());
      double median = *mid;
      if (v.size() % 2 == 0) median = 0.5 * (median + *std::max_element(v.begin(), mid));
      s.median_rel_err = median;
    }
    return s;
  }

 private:
  ErrorStats stats_;
  std::vector<double> per_matrix_rel_;
};

/// Compares one result against its reference. Both must have status Ok.
inline ErrorStats error_metrics(const InvDetResult<double>& result, const InvDetResult<double>& reference,
                                const Herm3<double>& m) {
  ErrorAccumulator acc;
  acc.add(result, reference, m);
  return acc.finish();
}

}  // namespace herm3
