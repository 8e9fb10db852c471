#pragma once

// HM3B binary batch format, version 1. All fields little-endian.
//
//   offset  size  field
//   0       4     magic "HM3B"
//   4       2     version (u16) = 1
//   6       2     flags (u16); bit 0 = payload kind (0 matrices, 1 results),
//                 other bits must be zero
//   8       8     count (u64)
//   16      ...   count records
//
// Matrix record: 9 f64 (a, Re b, Im b, Re c, Im c, d, Re e, Im e, f), 72 bytes.
// Result record: 11 f64 (inverse as above, det, 1/det) followed by one status
// byte (0 ok, 1 singular, 2 not positive definite), 89 bytes.

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "herm3/batch.hpp"

namespace herm3::hm3b {

inline constexpr char kMagic[4] = {'H', 'M', '3', 'B'};
inline constexpr std::uint16_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 16;
inline constexpr std::size_t kMatrixBytes = kMatrixRecord * 8;
inline constexpr std::size_t kResultBytes = kResultRecord * 8 + 1;

enum class PayloadKind : std::uint16_t { Matrices = 0, Results = 1 };

struct Header {
  std::uint16_t version = kVersion;
  PayloadKind kind = PayloadKind::Matrices;
  std::uint64_t count = 0;
};

inline constexpr std::size_t record_bytes(PayloadKind kind) {
  return kind == PayloadKind::Matrices ? kMatrixBytes : kResultBytes;
}

class Error : public std::runtime_error {
 public:
  enum class Kind { BadMagic, UnsupportedVersion, BadFlags, WrongPayloadKind, TruncatedHeader, TruncatedPayload,
                    TrailingData, BadStatus, WriteFailure };

  Error(Kind kind, std::uint64_t offset, const std::string& what)
      : std::runtime_error(what + " at byte offset " + std::to_string(offset)), kind_(kind), offset_(offset) {}

  Kind kind() const { return kind_; }
  std::uint64_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::uint64_t offset_;
};

namespace detail {

template <class U>
U to_le(U v) {
  if constexpr (std::endian::native == std::endian::big) {
    if constexpr (sizeof(U) == 2) return __builtin_bswap16(v);
    if constexpr (sizeof(U) == 4) return __builtin_bswap32(v);
    if constexpr (sizeof(U) == 8) return __builtin_bswap64(v);
  }
  return v;
}

template <class U>
void put(char* p, U v) {
  v = to_le(v);
  std::memcpy(p, &v, sizeof(U));
}

template <class U>
U get(const char* p) {
  U v;
  std::memcpy(&v, p, sizeof(U));
  return to_le(v);
}

inline void encode_doubles(std::span<const double> in, char* out) {
  if constexpr (std::endian::native == std::endian::little) {
    std::memcpy(out, in.data(), in.size_bytes());
  } else {
    for (std::size_t i = 0; i < in.size(); ++i) put(out + 8 * i, std::bit_cast<std::uint64_t>(in[i]));
  }
}

inline void decode_doubles(const char* in, std::span<double> out) {
  if constexpr (std::endian::native == std::endian::little) {
    std::memcpy(out.data(), in, out.size_bytes());
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::bit_cast<double>(get<std::uint64_t>(in + 8 * i));
  }
}

inline void write_bytes(std::ostream& out, const char* p, std::size_t n, std::uint64_t offset) {
  out.write(p, static_cast<std::streamsize>(n));
  if (!out) throw Error(Error::Kind::WriteFailure, offset, "HM3B write failed");
}

// Reads up to n bytes; returns the number actually read.
inline std::size_t read_bytes(std::istream& in, char* p, std::size_t n) {
  in.read(p, static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in.gcount());
}

}  // namespace detail

inline void write_header(std::ostream& out, const Header& h) {
  char buf[kHeaderSize];
  std::memcpy(buf, kMagic, 4);
  detail::put<std::uint16_t>(buf + 4, h.version);
  detail::put<std::uint16_t>(buf + 6, static_cast<std::uint16_t>(h.kind));
  detail::put<std::uint64_t>(buf + 8, h.count);
  detail::write_bytes(out, buf, kHeaderSize, 0);
}

/// Reads and validates a header of either payload kind.
inline Header read_header(std::istream& in) {
  char buf[kHeaderSize];
  const std::size_t got = detail::read_bytes(in, buf, kHeaderSize);
  if (got >= 4 && std::memcmp(buf, kMagic, 4) != 0) throw Error(Error::Kind::BadMagic, 0, "bad HM3B magic");
  if (got < kHeaderSize) throw Error(Error::Kind::TruncatedHeader, got, "truncated HM3B header");
  Header h;
  h.version = detail::get<std::uint16_t>(buf + 4);
  if (h.version != kVersion)
    throw Error(Error::Kind::UnsupportedVersion, 4, "unsupported HM3B version " + std::to_string(h.version));
  const auto flags = detail::get<std::uint16_t>(buf + 6);
  if (flags > 1) throw Error(Error::Kind::BadFlags, 6, "unknown HM3B flag bits");
  h.kind = static_cast<PayloadKind>(flags);
  h.count = detail::get<std::uint64_t>(buf + 8);
  return h;
}

inline void expect_kind(const Header& h, PayloadKind kind) {
  if (h.kind != kind)
    throw Error(Error::Kind::WrongPayloadKind, 6,
                kind == PayloadKind::Matrices ? "expected an HM3B matrix file, found results"
                                              : "expected an HM3B result file, found matrices");
}

/// Decodes `n` matrix records from `in` into `out`. `offset` is the stream
/// offset of the first record, for error reporting.
inline void read_matrix_records(std::istream& in, std::size_t n, std::uint64_t offset, std::span<double> out) {
  std::vector<char> buf(n * kMatrixBytes);
  const std::size_t got = detail::read_bytes(in, buf.data(), buf.size());
  if (got != buf.size()) throw Error(Error::Kind::TruncatedPayload, offset + got, "truncated HM3B payload");
  detail::decode_doubles(buf.data(), out.first(n * kMatrixRecord));
}

inline void write_matrix_records(std::ostream& out, std::span<const double> values, std::uint64_t offset) {
  std::vector<char> buf(values.size() * 8);
  detail::encode_doubles(values, buf.data());
  detail::write_bytes(out, buf.data(), buf.size(), offset);
}

inline void write_result_records(std::ostream& out, std::span<const double> values, std::span<const Status> status,
                                 std::uint64_t offset) {
  std::vector<char> buf(status.size() * kResultBytes);
  for (std::size_t i = 0; i < status.size(); ++i) {
    char* p = buf.data() + i * kResultBytes;
    detail::encode_doubles(values.subspan(i * kResultRecord, kResultRecord), p);
    p[kResultRecord * 8] = static_cast<char>(status[i]);
  }
  detail::write_bytes(out, buf.data(), buf.size(), offset);
}

inline void expect_end(std::istream& in, std::uint64_t offset) {
  if (in.peek() != std::char_traits<char>::eof())
    throw Error(Error::Kind::TrailingData, offset, "unexpected data after HM3B payload");
}

/// Writes header and payload; returns the number of bytes written.
inline std::uint64_t write_batch(const MatrixBatch& batch, std::ostream& out) {
  write_header(out, {kVersion, PayloadKind::Matrices, batch.size()});
  write_matrix_records(out, batch.values(), kHeaderSize);
  return kHeaderSize + batch.size() * kMatrixBytes;
}

inline MatrixBatch read_batch(std::istream& in) {
  const Header h = read_header(in);
  expect_kind(h, PayloadKind::Matrices);
  // Read in bounded pieces so a corrupt count cannot trigger a huge allocation
  // before truncation is detected.
  constexpr std::size_t kPiece = 1 << 16;
  std::vector<double> values;
  std::uint64_t done = 0;
  while (done < h.count) {
    const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(kPiece, h.count - done));
    values.resize((done + n) * kMatrixRecord);
    read_matrix_records(in, n, kHeaderSize + done * kMatrixBytes,
                        std::span<double>(values).subspan(done * kMatrixRecord));
    done += n;
  }
  expect_end(in, kHeaderSize + h.count * kMatrixBytes);
  return MatrixBatch(std::move(values));
}

inline std::uint64_t write_results(const ResultBatch& results, std::ostream& out) {
  write_header(out, {kVersion, PayloadKind::Results, results.size()});
  write_result_records(out, results.values(), results.statuses(), kHeaderSize);
  return kHeaderSize + results.size() * kResultBytes;
}

inline ResultBatch read_results(std::istream& in) {
  const Header h = read_header(in);
  expect_kind(h, PayloadKind::Results);
  constexpr std::size_t kPiece = 1 << 14;
  ResultBatch out;
  std::vector<char> buf;
  std::uint64_t done = 0;
  while (done < h.count) {
    const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(kPiece, h.count - done));
    const std::uint64_t offset = kHeaderSize + done * kResultBytes;
    buf.resize(n * kResultBytes);
    const std::size_t got = detail::read_bytes(in, buf.data(), buf.size());
    if (got != buf.size()) throw Error(Error::Kind::TruncatedPayload, offset + got, "truncated HM3B payload");
    out.resize(done + n);
    for (std::size_t i = 0; i < n; ++i) {
      const char* p = buf.data() + i * kResultBytes;
      const auto code = static_cast<std::uint8_t>(p[kResultRecord * 8]);
      if (code > 2)
        throw Error(Error::Kind::BadStatus, offset + i * kResultBytes + kResultRecord * 8, "invalid HM3B status byte");
      detail::decode_doubles(p, out.values().subspan((done + i) * kResultRecord, kResultRecord));
      out.statuses()[done + i] = static_cast<Status>(code);
    }
    done += n;
  }
  expect_end(in, kHeaderSize + h.count * kResultBytes);
  return out;
}

}  // namespace herm3::hm3b
