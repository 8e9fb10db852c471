#pragma once

// Straight-line kernels for a single 3x3 Hermitian matrix.
//
// Every kernel is written once against a generic scalar (see scalar.hpp) and
// instantiated at double for production, at an extended-precision type for
// the accuracy oracle, and at CountingScalar for the operation audit.

#include <cmath>

#include "herm3/hermitian.hpp"
#include "herm3/scalar.hpp"

namespace herm3 {

namespace detail {

// |det| <= tol * eps * |a d f|. For a positive semi-definite matrix a*d*f
// bounds the determinant (Hadamard), so this flags matrices that are
// singular up to rounding. An exactly zero determinant is always flagged.
template <class T>
constexpr bool det_is_zero(const T& det, const T& a, const T& d, const T& f) {
  using R = typename scalar_traits<T>::raw_type;
  using std::abs;
  const R scale = abs(raw_value(a) * raw_value(d) * raw_value(f));
  const R tol = R(kRankTolerance) * scalar_traits<T>::epsilon();
  return abs(raw_value(det)) <= tol * scale;
}

// A Cholesky pivot (radicand) must exceed tol * eps * diagonal.
template <class T>
constexpr bool pivot_is_bad(const T& radicand, const T& diagonal) {
  using R = typename scalar_traits<T>::raw_type;
  const R tol = R(kRankTolerance) * scalar_traits<T>::epsilon();
  const R r = raw_value(radicand);
  return !(r > R(0)) || r <= tol * raw_value(diagonal);
}

}  // namespace detail

/// Cofactor matrix entries: entry (i,j) is the cofactor of A(j,i).
template <class T>
constexpr Adjugate3<T> adjugate(const Herm3<T>& m) {
  const auto& [a, d, f, b, c, e] = m;
  Adjugate3<T> r;
  r.a_c = d * f - norm2(e);
  r.b_c = c * conj(e) - b * f;
  r.c_c = b * e - c * d;
  r.d_c = a * f - norm2(c);
  r.e_c = c * conj(b) - a * e;
  r.f_c = a * d - norm2(b);
  return r;
}

/// First-row cofactor expansion keeping only the real part, which is all
/// that survives for a Hermitian matrix:
///   a*a_c + Re(b)Re(b_c) + Im(b)Im(b_c) + Re(c)Re(c_c) + Im(c)Im(c_c)
template <class T>
constexpr T determinant(const Herm3<T>& m, const Adjugate3<T>& adj) {
  return m.a * adj.a_c + m.b.re * adj.b_c.re + m.b.im * adj.b_c.im + m.c.re * adj.c_c.re +
         m.c.im * adj.c_c.im;
}

template <class T>
constexpr T determinant(const Herm3<T>& m) {
  return determinant(m, adjugate(m));
}

/// Inverse and determinant through the adjugate: cofactors, determinant,
/// one reciprocal, then scaling. Takes no square roots.
template <class T>
constexpr InvDetResult<T> fast_invert(const Herm3<T>& m) {
  const Adjugate3<T> adj = adjugate(m);
  InvDetResult<T> r;
  r.det = determinant(m, adj);
  if (detail::det_is_zero(r.det, m.a, m.d, m.f)) {
    r.status = Status::Singular;
    return r;
  }
  const T t = T(1) / r.det;
  r.inv_det = t;
  r.inverse.a = t * adj.a_c;
  r.inverse.b = t * adj.b_c;
  r.inverse.c = t * adj.c_c;
  r.inverse.d = t * adj.d_c;
  r.inverse.e = t * adj.e_c;
  r.inverse.f = t * adj.f_c;
  return r;
}

template <class T>
struct CholResult {
  CholFactor<T> factor{};
  Status status = Status::Ok;

  constexpr bool ok() const { return status == Status::Ok; }
};

/// A = L L^H with real positive diagonal. Fails with NotPositiveDefinite
/// when a pivot is not safely positive.
template <class T>
constexpr CholResult<T> cholesky_factorize(const Herm3<T>& m) {
  using std::sqrt;
  CholResult<T> r;
  auto& L = r.factor;
  if (detail::pivot_is_bad(m.a, m.a)) {
    r.status = Status::NotPositiveDefinite;
    return r;
  }
  L.l00 = sqrt(m.a);
  L.v0 = T(1) / L.l00;
  L.l10 = conj(m.b) * L.v0;
  L.l20 = conj(m.c) * L.v0;

  const T r1 = m.d - norm2(L.l10);
  if (detail::pivot_is_bad(r1, m.d)) {
    r.status = Status::NotPositiveDefinite;
    return r;
  }
  L.l11 = sqrt(r1);
  L.v1 = T(1) / L.l11;
  // A(2,1) = conj(e) = l20 conj(l10) + l21 l11
  L.l21 = conj(m.e - L.l10 * conj(L.l20)) * L.v1;

  const T r2 = m.f - norm2(L.l20) - norm2(L.l21);
  if (detail::pivot_is_bad(r2, m.f)) {
    r.status = Status::NotPositiveDefinite;
    return r;
  }
  L.l22 = sqrt(r2);
  L.v2 = T(1) / L.l22;
  return r;
}

/// Inverse and determinant from the Cholesky factor: T = L^-1 in closed
/// form, A^-1 = T^H T, det = (l00 l11 l22)^2. The reciprocal determinant is
/// (v0 v1 v2)^2, so the only divisions are the three cached reciprocals.
template <class T>
constexpr InvDetResult<T> cholesky_invert(const Herm3<T>& m) {
  InvDetResult<T> r;
  const CholResult<T> ch = cholesky_factorize(m);
  if (!ch.ok()) {
    r.status = ch.status;
    return r;
  }
  const auto& L = ch.factor;

  // L^-1; diagonal entries are v0, v1, v2.
  const Cx<T> t10 = -(L.l10 * (L.v0 * L.v1));
  const Cx<T> t20 = (L.v2 * L.v0) * (L.l21 * L.l10 * L.v1 - L.l20);
  const Cx<T> t21 = -(L.l21 * (L.v1 * L.v2));

  const T diag = L.l00 * L.l11 * L.l22;
  r.det = diag * diag;
  const T inv_diag = L.v0 * L.v1 * L.v2;
  r.inv_det = inv_diag * inv_diag;

  r.inverse.a = L.v0 * L.v0 + norm2(t10) + norm2(t20);
  r.inverse.b = conj(t10) * L.v1 + conj(t20) * t21;
  r.inverse.c = conj(t20) * L.v2;
  r.inverse.d = L.v1 * L.v1 + norm2(t21);
  r.inverse.e = conj(t21) * L.v2;
  r.inverse.f = L.v2 * L.v2;
  return r;
}

enum class Method { Fast, Cholesky };

constexpr std::string_view to_string(Method m) { return m == Method::Fast ? "fast" : "cholesky"; }

template <class T>
constexpr InvDetResult<T> invert(const Herm3<T>& m, Method method) {
  return method == Method::Fast ? fast_invert(m) : cholesky_invert(m);
}

}  // namespace herm3
