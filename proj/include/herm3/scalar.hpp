#pragma once

#include <limits>

namespace herm3 {

// A kernel scalar must support + - * / with itself, unary minus, ordering,
// explicit construction from double, and an ADL-visible sqrt(). Status checks
// (rank thresholds) are evaluated on the underlying raw value so that
// instrumented scalars do not tally them.
template <class T>
struct scalar_traits {
  using raw_type = T;
  static constexpr const T& raw(const T& x) { return x; }
  static constexpr T epsilon() { return std::numeric_limits<T>::epsilon(); }
};

template <class T>
constexpr decltype(auto) raw_value(const T& x) {
  return scalar_traits<T>::raw(x);
}

/// Relative tolerance, in units of the scalar's epsilon, below which a
/// determinant or Cholesky pivot is treated as zero.
inline constexpr double kRankTolerance = 64.0;

}  // namespace herm3
