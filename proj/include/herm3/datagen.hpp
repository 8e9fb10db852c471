#pragma once

// Seeded generation of PolSAR-like Hermitian matrices.
//
// Matrix i of a batch draws from its own xoshiro256** stream keyed by
// (seed, i), so batches are prefix-stable and independent of thread count.

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "herm3/batch.hpp"
#include "herm3/kernels.hpp"
#include "herm3/parallel.hpp"
#include "herm3/rng.hpp"

namespace herm3 {

/// Scattering vector (S_hh, S_hv, S_vv) under reciprocity.
struct ScatteringVector {
  Cx<double> s_hh, s_hv, s_vv;
};

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::size_t looks = 1;
  std::optional<Herm3<double>> base_covariance;  // identity when absent
  std::size_t workers = 1;
};

inline void validate(const GenConfig& cfg) {
  if (cfg.count < 1) throw std::invalid_argument("count must be at least 1");
  if (cfg.looks < 1) throw std::invalid_argument("looks must be at least 1");
}

/// L z for a lower-triangular factor L.
inline ScatteringVector apply_factor(const CholFactor<double>& L, const Cx<double>& z0, const Cx<double>& z1,
                                     const Cx<double>& z2) {
  return {L.l00 * z0, L.l10 * z0 + L.l11 * z1, L.l20 * z0 + L.l21 * z1 + L.l22 * z2};
}

/// One scattering vector with covariance L L^H.
inline ScatteringVector sample_scattering(Xoshiro256& rng, const CholFactor<double>& sigma_factor) {
  const Cx<double> z0 = rng.complex_normal();
  const Cx<double> z1 = rng.complex_normal();
  const Cx<double> z2 = rng.complex_normal();
  return apply_factor(sigma_factor, z0, z1, z2);
}

/// G^H G for a 3x3 complex G whose Re/Im parts are uniform on [-1, 1),
/// drawn row-major, real part first.
inline Herm3<double> random_hermitian_pd(Xoshiro256& rng) {
  Cx<double> g[3][3];
  for (auto& row : g)
    for (auto& z : row) {
      z.re = rng.symmetric();
      z.im = rng.symmetric();
    }
  Herm3<double> m;
  for (int k = 0; k < 3; ++k) {
    m.a += norm2(g[k][0]);
    m.d += norm2(g[k][1]);
    m.f += norm2(g[k][2]);
    m.b = m.b + conj(g[k][0]) * g[k][1];
    m.c = m.c + conj(g[k][0]) * g[k][2];
    m.e = m.e + conj(g[k][1]) * g[k][2];
  }
  return m;
}

inline MatrixBatch random_hermitian_pd(const GenConfig& cfg) {
  validate(cfg);
  MatrixBatch out(cfg.count);
  parallel_ranges(cfg.count, cfg.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto rng = Xoshiro256::for_index(cfg.seed, i);
      out.set(i, random_hermitian_pd(rng));
    }
  });
  return out;
}

inline CholFactor<double> covariance_factor(const GenConfig& cfg) {
  if (!cfg.base_covariance) {
    CholFactor<double> L;
    L.l00 = L.l11 = L.l22 = 1.0;
    L.v0 = L.v1 = L.v2 = 1.0;
    return L;
  }
  const auto ch = cholesky_factorize(*cfg.base_covariance);
  if (!ch.ok()) throw std::invalid_argument("base covariance is not positive definite");
  return ch.factor;
}

/// Multilook covariance Z = (1/N) sum_l S(l) S(l)^H.
inline Herm3<double> simulate_multilook(Xoshiro256& rng, const CholFactor<double>& sigma_factor,
                                        std::size_t looks) {
  Herm3<double> z;
  for (std::size_t l = 0; l < looks; ++l) {
    const auto s = sample_scattering(rng, sigma_factor);
    z.a += norm2(s.s_hh);
    z.d += norm2(s.s_hv);
    z.f += norm2(s.s_vv);
    z.b = z.b + s.s_hh * conj(s.s_hv);
    z.c = z.c + s.s_hh * conj(s.s_vv);
    z.e = z.e + s.s_hv * conj(s.s_vv);
  }
  const double n = static_cast<double>(looks);
  z.a /= n;
  z.d /= n;
  z.f /= n;
  z.b = {z.b.re / n, z.b.im / n};
  z.c = {z.c.re / n, z.c.im / n};
  z.e = {z.e.re / n, z.e.im / n};
  return z;
}

inline MatrixBatch simulate_multilook(const GenConfig& cfg) {
  validate(cfg);
  const CholFactor<double> L = covariance_factor(cfg);
  MatrixBatch out(cfg.count);
  parallel_ranges(cfg.count, cfg.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto rng = Xoshiro256::for_index(cfg.seed, i);
      out.set(i, simulate_multilook(rng, L, cfg.looks));
    }
  });
  return out;
}

}  // namespace herm3
