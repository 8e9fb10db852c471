#pragma once

#include <cstdint>
#include <string_view>

#include "herm3/complex.hpp"

namespace herm3 {

/// Packed 3x3 Hermitian matrix
///
///   [ a   b   c ]
///   [ b*  d   e ]
///   [ c*  e*  f ]
///
/// Only the real diagonal and the upper off-diagonal are stored.
template <class T>
struct Herm3 {
  T a{}, d{}, f{};
  Cx<T> b{}, c{}, e{};

  static constexpr Herm3 identity() { return diagonal(T(1), T(1), T(1)); }
  static constexpr Herm3 diagonal(T a, T d, T f) {
    Herm3 m;
    m.a = a;
    m.d = d;
    m.f = f;
    return m;
  }

  friend constexpr bool operator==(const Herm3&, const Herm3&) = default;
};

/// Adjugate (classical adjoint) of a Herm3; itself Hermitian.
template <class T>
struct Adjugate3 {
  T a_c{}, d_c{}, f_c{};
  Cx<T> b_c{}, c_c{}, e_c{};
};

/// Lower Cholesky factor with real positive diagonal, plus the cached
/// reciprocals v_k = 1 / l_kk.
template <class T>
struct CholFactor {
  T l00{}, l11{}, l22{};
  Cx<T> l10{}, l20{}, l21{};
  T v0{}, v1{}, v2{};
};

enum class Status : std::uint8_t {
  Ok = 0,
  Singular = 1,
  NotPositiveDefinite = 2,
};

constexpr std::string_view to_string(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Singular: return "singular";
    case Status::NotPositiveDefinite: return "not-positive-definite";
  }
  return "unknown";
}

/// Upper triangle of the inverse, the determinant and its reciprocal.
/// When status != Ok the numeric fields are unspecified.
template <class T>
struct InvDetResult {
  Herm3<T> inverse{};
  T det{};
  T inv_det{};
  Status status = Status::Ok;

  constexpr bool ok() const { return status == Status::Ok; }
};

template <class U, class T>
constexpr Herm3<U> convert(const Herm3<T>& m) {
  auto cx = [](const Cx<T>& z) { return Cx<U>(static_cast<U>(z.re), static_cast<U>(z.im)); };
  Herm3<U> r;
  r.a = static_cast<U>(m.a);
  r.d = static_cast<U>(m.d);
  r.f = static_cast<U>(m.f);
  r.b = cx(m.b);
  r.c = cx(m.c);
  r.e = cx(m.e);
  return r;
}

template <class U, class T>
constexpr InvDetResult<U> convert(const InvDetResult<T>& r) {
  return {convert<U>(r.inverse), static_cast<U>(r.det), static_cast<U>(r.inv_det), r.status};
}

}  // namespace herm3
