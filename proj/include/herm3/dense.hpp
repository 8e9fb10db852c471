#pragma once

// General dense 3x3 complex matrices. Used as an independent check on the
// packed Hermitian kernels, so nothing here exploits Hermitian structure.

#include <algorithm>
#include <array>
#include <cmath>

#include "herm3/hermitian.hpp"

namespace herm3 {

template <class T>
using Dense3 = std::array<std::array<Cx<T>, 3>, 3>;

template <class T>
constexpr Dense3<T> to_dense(const Herm3<T>& m) {
  Dense3<T> r{};
  r[0][0] = Cx<T>(m.a);
  r[1][1] = Cx<T>(m.d);
  r[2][2] = Cx<T>(m.f);
  r[0][1] = m.b;
  r[0][2] = m.c;
  r[1][2] = m.e;
  r[1][0] = conj(m.b);
  r[2][0] = conj(m.c);
  r[2][1] = conj(m.e);
  return r;
}

template <class T>
constexpr Dense3<T> multiply(const Dense3<T>& x, const Dense3<T>& y) {
  Dense3<T> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Cx<T> acc{};
      for (int k = 0; k < 3; ++k) acc = acc + x[i][k] * y[k][j];
      r[i][j] = acc;
    }
  return r;
}

template <class T>
constexpr Dense3<T> conj_transpose(const Dense3<T>& x) {
  Dense3<T> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = conj(x[j][i]);
  return r;
}

template <class T>
T abs(const Cx<T>& z) {
  using std::hypot;
  return hypot(z.re, z.im);
}

/// Largest entry magnitude.
template <class T>
T max_norm(const Dense3<T>& x) {
  T r(0);
  for (const auto& row : x)
    for (const auto& z : row) r = std::max(r, abs(z));
  return r;
}

/// Infinity norm: largest absolute row sum.
template <class T>
T inf_norm(const Dense3<T>& x) {
  T r(0);
  for (const auto& row : x) {
    T s(0);
    for (const auto& z : row) s = s + abs(z);
    r = std::max(r, s);
  }
  return r;
}

/// max |(M X - I)_ij| through a general dense multiply.
template <class T>
T residual(const Herm3<T>& m, const Herm3<T>& inv) {
  Dense3<T> p = multiply(to_dense(m), to_dense(inv));
  for (int i = 0; i < 3; ++i) p[i][i].re = p[i][i].re - T(1);
  return max_norm(p);
}

/// kappa_inf(M) = ||M||_inf ||M^-1||_inf given an inverse for M.
template <class T>
T condition_inf(const Herm3<T>& m, const Herm3<T>& inv) {
  return inf_norm(to_dense(m)) * inf_norm(to_dense(inv));
}

}  // namespace herm3
