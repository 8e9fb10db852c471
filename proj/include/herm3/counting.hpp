#pragma once

// Operation-counting scalar.
//
// CountingScalar carries a double so control flow matches the real run, and
// records each arithmetic operation into the OpCounts bound by the innermost
// live CountScope on the current thread. Convention:
//
//   x + y, x - y     add
//   x * y, x * x     mul
//   x / y, 1 / x     div
//   sqrt(x)          sqrt
//   -x, comparisons  not counted
//
// Status checks in the kernels run on the raw double and are not counted.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>

#include "herm3/kernels.hpp"
#include "herm3/scalar.hpp"

namespace herm3 {

struct OpCounts {
  std::uint64_t mul = 0;
  std::uint64_t add = 0;
  std::uint64_t div = 0;
  std::uint64_t sqrt = 0;

  constexpr std::uint64_t total() const { return mul + add + div + sqrt; }
  friend constexpr bool operator==(const OpCounts&, const OpCounts&) = default;
};

namespace detail {
inline thread_local OpCounts* active_tally = nullptr;
}

/// Binds `counts` as the tally for CountingScalar operations on this thread
/// for the lifetime of the scope.
class CountScope {
 public:
  explicit CountScope(OpCounts& counts) : previous_(detail::active_tally) { detail::active_tally = &counts; }
  ~CountScope() { detail::active_tally = previous_; }
  CountScope(const CountScope&) = delete;
  CountScope& operator=(const CountScope&) = delete;

 private:
  OpCounts* previous_;
};

class CountingScalar {
 public:
  constexpr CountingScalar() = default;
  explicit constexpr CountingScalar(double v) : v_(v) {}

  constexpr double value() const { return v_; }
  explicit constexpr operator double() const { return v_; }

  friend CountingScalar operator+(CountingScalar x, CountingScalar y) {
    tally(&OpCounts::add);
    return CountingScalar(x.v_ + y.v_);
  }
  friend CountingScalar operator-(CountingScalar x, CountingScalar y) {
    tally(&OpCounts::add);
    return CountingScalar(x.v_ - y.v_);
  }
  friend CountingScalar operator*(CountingScalar x, CountingScalar y) {
    tally(&OpCounts::mul);
    return CountingScalar(x.v_ * y.v_);
  }
  friend CountingScalar operator/(CountingScalar x, CountingScalar y) {
    tally(&OpCounts::div);
    return CountingScalar(x.v_ / y.v_);
  }
  friend constexpr CountingScalar operator-(CountingScalar x) { return CountingScalar(-x.v_); }
  friend CountingScalar sqrt(CountingScalar x) {
    tally(&OpCounts::sqrt);
    return CountingScalar(std::sqrt(x.v_));
  }

  friend constexpr auto operator<=>(CountingScalar x, CountingScalar y) { return x.v_ <=> y.v_; }
  friend constexpr bool operator==(CountingScalar x, CountingScalar y) { return x.v_ == y.v_; }

 private:
  static void tally(std::uint64_t OpCounts::*field) {
    if (detail::active_tally) ++(detail::active_tally->*field);
  }

  double v_ = 0.0;
};

template <>
struct scalar_traits<CountingScalar> {
  using raw_type = double;
  static constexpr double raw(const CountingScalar& x) { return x.value(); }
  static constexpr double epsilon() { return std::numeric_limits<double>::epsilon(); }
};

/// Default probe: a fixed, well-conditioned positive definite matrix.
inline constexpr Herm3<double> kCountProbe{4.0, 5.0, 6.0, {1.0, 0.5}, {-0.25, 0.75}, {0.5, -1.0}};

/// Runs the selected kernel on `probe` with CountingScalar and returns the
/// tallies.
inline OpCounts count_ops(Method method, const Herm3<double>& probe = kCountProbe) {
  const Herm3<CountingScalar> m = convert<CountingScalar>(probe);
  OpCounts counts;
  {
    CountScope scope(counts);
    const auto r = invert(m, method);
    static_cast<void>(r);
  }
  return counts;
}

/// Published per-method operation counts for the adjugate and Cholesky
/// algorithms, kept for side-by-side reporting.
struct PublishedCounts {
  std::uint64_t mul, add, div, sqrt, total;
};

inline constexpr PublishedCounts published_counts(Method m) {
  return m == Method::Fast ? PublishedCounts{37, 26, 1, 0, 64} : PublishedCounts{59, 24, 3, 3, 89};
}

}  // namespace herm3
