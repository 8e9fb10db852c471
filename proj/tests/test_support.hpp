#pragma once

// Test-only oracles and generators. Nothing here calls the packed kernels:
// the general-matrix routines work on full 3x3 std::complex<long double>
// arrays so they stay independent of the code under test.

#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "herm3/hermitian.hpp"
#include "herm3/rng.hpp"

namespace herm3::testing {

using CL = std::complex<long double>;
using Full = std::array<std::array<CL, 3>, 3>;

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

inline Full full(const Herm3<double>& m) {
  auto cx = [](const Cx<double>& z) { return CL(z.re, z.im); };
  Full r{};
  r[0] = {CL(m.a), cx(m.b), cx(m.c)};
  r[1] = {std::conj(cx(m.b)), CL(m.d), cx(m.e)};
  r[2] = {std::conj(cx(m.c)), std::conj(cx(m.e)), CL(m.f)};
  return r;
}

/// Determinant by the rule of Sarrus on a general complex matrix.
inline CL general_det(const Full& x) {
  return x[0][0] * x[1][1] * x[2][2] + x[0][1] * x[1][2] * x[2][0] + x[0][2] * x[1][0] * x[2][1] -
         x[0][2] * x[1][1] * x[2][0] - x[0][0] * x[1][2] * x[2][1] - x[0][1] * x[1][0] * x[2][2];
}

/// Cofactor of entry (i, j): signed determinant of the 2x2 minor.
inline CL general_cofactor(const Full& x, int i, int j) {
  int rows[2], cols[2];
  for (int k = 0, r = 0, c = 0; k < 3; ++k) {
    if (k != i) rows[r++] = k;
    if (k != j) cols[c++] = k;
  }
  const CL minor = x[rows[0]][cols[0]] * x[rows[1]][cols[1]] - x[rows[0]][cols[1]] * x[rows[1]][cols[0]];
  return ((i + j) % 2 == 0) ? minor : -minor;
}

/// Adjugate (transposed cofactor matrix) of a general matrix.
inline Full general_adjugate(const Full& x) {
  Full r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = general_cofactor(x, j, i);
  return r;
}

inline Full general_multiply(const Full& x, const Full& y) {
  Full r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += x[i][k] * y[k][j];
  return r;
}

inline long double max_abs_diff_identity(const Full& x, long double diag = 1.0L) {
  long double m = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(x[i][j] - (i == j ? CL(diag) : CL(0))));
  return m;
}

/// Magnitude scale of the cofactor-expansion determinant: the sum of the
/// absolute values of every product that enters it.
inline double det_scale(const Herm3<double>& m) {
  auto A = [](const Cx<double>& z) { return std::hypot(z.re, z.im); };
  const double a = std::abs(m.a), d = std::abs(m.d), f = std::abs(m.f);
  const double b = A(m.b), c = A(m.c), e = A(m.e);
  return a * (d * f + e * e) + b * (c * e + b * f) + c * (b * e + c * d);
}

/// Largest entry of |M| * |adj|(M), where |adj| sums the magnitudes of the two
/// products in each cofactor.
inline double adjugate_scale(const Herm3<double>& m) {
  const Full x = full(m);
  std::array<std::array<long double, 3>, 3> ax{}, aadj{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ax[i][j] = std::abs(x[i][j]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // adj(i, j) is the cofactor of (j, i).
      int rows[2], cols[2];
      for (int k = 0, r = 0, c = 0; k < 3; ++k) {
        if (k != j) rows[r++] = k;
        if (k != i) cols[c++] = k;
      }
      aadj[i][j] = ax[rows[0]][cols[0]] * ax[rows[1]][cols[1]] + ax[rows[0]][cols[1]] * ax[rows[1]][cols[0]];
    }
  long double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      long double v = 0;
      for (int k = 0; k < 3; ++k) v += ax[i][k] * aadj[k][j];
      s = std::max(s, v);
    }
  return static_cast<double>(s);
}

/// Hermitian matrix with every real and imaginary part uniform on [-1, 1);
/// generally indefinite.
inline Herm3<double> random_hermitian(Xoshiro256& rng) {
  Herm3<double> m;
  m.a = rng.symmetric();
  m.d = rng.symmetric();
  m.f = rng.symmetric();
  m.b = {rng.symmetric(), rng.symmetric()};
  m.c = {rng.symmetric(), rng.symmetric()};
  m.e = {rng.symmetric(), rng.symmetric()};
  return m;
}

inline double rel_diff(double x, double y) {
  const double den = std::max({std::abs(x), std::abs(y), std::numeric_limits<double>::min()});
  return std::abs(x - y) / den;
}

inline double rel_diff(const Cx<double>& x, const Cx<double>& y) {
  const double den = std::max({std::hypot(x.re, x.im), std::hypot(y.re, y.im), std::numeric_limits<double>::min()});
  return std::hypot(x.re - y.re, x.im - y.im) / den;
}

/// Largest entrywise relative difference between two inverses.
inline double max_rel_diff(const Herm3<double>& x, const Herm3<double>& y) {
  return std::max({rel_diff(x.a, y.a), rel_diff(x.d, y.d), rel_diff(x.f, y.f), rel_diff(x.b, y.b),
                   rel_diff(x.c, y.c), rel_diff(x.e, y.e)});
}

inline const Herm3<double> kGolden{2.0, 3.0, 1.0, {1.0, 1.0}, {0.0, 0.0}, {0.0, 1.0}};

}  // namespace herm3::testing
