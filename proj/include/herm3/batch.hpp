#pragma once

// Contiguous batches of packed matrices and their inversion results.
//
// Matrix record (9 doubles):  a, Re b, Im b, Re c, Im c, d, Re e, Im e, f
// Result record (11 doubles): the inverse in the same order, det, 1/det

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "herm3/kernels.hpp"
#include "herm3/parallel.hpp"

namespace herm3 {

inline constexpr std::size_t kMatrixRecord = 9;
inline constexpr std::size_t kResultRecord = 11;

inline Herm3<double> load_matrix(const double* p) {
  Herm3<double> m;
  m.a = p[0];
  m.b = {p[1], p[2]};
  m.c = {p[3], p[4]};
  m.d = p[5];
  m.e = {p[6], p[7]};
  m.f = p[8];
  return m;
}

inline void store_matrix(const Herm3<double>& m, double* p) {
  p[0] = m.a;
  p[1] = m.b.re;
  p[2] = m.b.im;
  p[3] = m.c.re;
  p[4] = m.c.im;
  p[5] = m.d;
  p[6] = m.e.re;
  p[7] = m.e.im;
  p[8] = m.f;
}

class MatrixBatch {
 public:
  MatrixBatch() = default;
  explicit MatrixBatch(std::size_t count) : data_(count * kMatrixRecord) {}
  explicit MatrixBatch(std::vector<double> data) : data_(std::move(data)) {
    if (data_.size() % kMatrixRecord != 0)
      throw std::invalid_argument("matrix batch buffer length is not a multiple of 9");
  }

  std::size_t size() const { return data_.size() / kMatrixRecord; }
  bool empty() const { return data_.empty(); }

  Herm3<double> operator[](std::size_t i) const { return load_matrix(data_.data() + i * kMatrixRecord); }
  void set(std::size_t i, const Herm3<double>& m) { store_matrix(m, data_.data() + i * kMatrixRecord); }
  void push_back(const Herm3<double>& m) {
    data_.resize(data_.size() + kMatrixRecord);
    set(size() - 1, m);
  }

  std::span<const double> values() const { return data_; }
  std::span<double> values() { return data_; }

  friend bool operator==(const MatrixBatch&, const MatrixBatch&) = default;

 private:
  std::vector<double> data_;
};

class ResultBatch {
 public:
  ResultBatch() = default;
  explicit ResultBatch(std::size_t count) : data_(count * kResultRecord), status_(count, Status::Ok) {}

  std::size_t size() const { return status_.size(); }
  void resize(std::size_t count) {
    data_.resize(count * kResultRecord);
    status_.resize(count, Status::Ok);
  }

  InvDetResult<double> operator[](std::size_t i) const {
    const double* p = data_.data() + i * kResultRecord;
    return {load_matrix(p), p[9], p[10], status_[i]};
  }
  void set(std::size_t i, const InvDetResult<double>& r) {
    double* p = data_.data() + i * kResultRecord;
    store_matrix(r.inverse, p);
    p[9] = r.det;
    p[10] = r.inv_det;
    status_[i] = r.status;
  }

  std::span<const double> values() const { return data_; }
  std::span<double> values() { return data_; }
  std::span<const Status> statuses() const { return status_; }
  std::span<Status> statuses() { return status_; }

  std::size_t count(Status s) const {
    std::size_t n = 0;
    for (Status x : status_) n += (x == s);
    return n;
  }

  friend bool operator==(const ResultBatch&, const ResultBatch&) = default;

 private:
  std::vector<double> data_;
  std::vector<Status> status_;
};

/// Applies one kernel to records [0, n) of `in`, writing `out` and `status`.
/// Payloads of failed records are zero-filled so output bytes are
/// deterministic.
template <Method M>
void invert_records(std::span<const double> in, std::span<double> out, std::span<Status> status) {
  const std::size_t n = status.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Herm3<double> m = load_matrix(in.data() + i * kMatrixRecord);
    InvDetResult<double> r = (M == Method::Fast) ? fast_invert(m) : cholesky_invert(m);
    if (!r.ok()) r = {{}, 0.0, 0.0, r.status};
    double* p = out.data() + i * kResultRecord;
    store_matrix(r.inverse, p);
    p[9] = r.det;
    p[10] = r.inv_det;
    status[i] = r.status;
  }
}

inline void invert_records(Method method, std::span<const double> in, std::span<double> out,
                           std::span<Status> status) {
  if (method == Method::Fast)
    invert_records<Method::Fast>(in, out, status);
  else
    invert_records<Method::Cholesky>(in, out, status);
}

/// Inverts every matrix of `batch` into `out` (resized as needed), splitting
/// the index range across `workers` threads. Per-matrix failures are
/// recorded as statuses; the output is identical for any worker count.
inline void invert_batch(const MatrixBatch& batch, Method method, std::size_t workers, ResultBatch& out) {
  if (out.size() != batch.size()) out = ResultBatch(batch.size());
  const auto in = batch.values();
  const auto values = out.values();
  const auto status = out.statuses();
  parallel_ranges(batch.size(), workers, [&](std::size_t begin, std::size_t end) {
    invert_records(method, in.subspan(begin * kMatrixRecord, (end - begin) * kMatrixRecord),
                   values.subspan(begin * kResultRecord, (end - begin) * kResultRecord),
                   status.subspan(begin, end - begin));
  });
}

inline ResultBatch invert_batch(const MatrixBatch& batch, Method method, std::size_t workers = 1) {
  ResultBatch out(batch.size());
  invert_batch(batch, method, workers, out);
  return out;
}

}  // namespace herm3
