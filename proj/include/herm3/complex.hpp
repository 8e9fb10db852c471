#pragma once

// Minimal complex type over an arbitrary real scalar.
//
// std::complex<T> is only specified for the built-in floating types, and its
// multiply carries NaN/Inf recovery branches. The kernels need a complex type
// that works with counting and extended-precision scalars and whose every
// operator maps to a fixed number of real operations:
//
//   z + w, z - w      2 add
//   z * w             4 mul + 2 add
//   s * z, z * s      2 mul
//   norm2(z)          2 mul + 1 add
//   conj(z), -z       free

namespace herm3 {

template <class T>
struct Cx {
  T re{};
  T im{};

  constexpr Cx() = default;
  constexpr Cx(T r, T i) : re(r), im(i) {}
  explicit constexpr Cx(T r) : re(r), im(T(0)) {}

  friend constexpr Cx operator+(const Cx& z, const Cx& w) { return {z.re + w.re, z.im + w.im}; }
  friend constexpr Cx operator-(const Cx& z, const Cx& w) { return {z.re - w.re, z.im - w.im}; }
  friend constexpr Cx operator-(const Cx& z) { return {-z.re, -z.im}; }

  friend constexpr Cx operator*(const Cx& z, const Cx& w) {
    return {z.re * w.re - z.im * w.im, z.re * w.im + z.im * w.re};
  }
  friend constexpr Cx operator*(const T& s, const Cx& z) { return {s * z.re, s * z.im}; }
  friend constexpr Cx operator*(const Cx& z, const T& s) { return {z.re * s, z.im * s}; }

  friend constexpr bool operator==(const Cx& z, const Cx& w) { return z.re == w.re && z.im == w.im; }
};

template <class T>
constexpr Cx<T> conj(const Cx<T>& z) {
  return {z.re, -z.im};
}

/// Squared magnitude, re² + im².
template <class T>
constexpr T norm2(const Cx<T>& z) {
  return z.re * z.re + z.im * z.im;
}

}  // namespace herm3
