#pragma once

// CSV batch format: one matrix per row, nine numeric columns in HM3B field
// order (a, re_b, im_b, re_c, im_c, d, re_e, im_e, f). An optional header row
// is recognised when its first field is not a number. Blank lines are
// skipped. Numbers are parsed and printed with std::from_chars/to_chars, so
// the format does not depend on the C locale and round-trips doubles exactly.

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "herm3/batch.hpp"

namespace herm3::csv {

inline constexpr std::string_view kHeader = "a,re_b,im_b,re_c,im_c,d,re_e,im_e,f";

class Error : public std::runtime_error {
 public:
  Error(std::size_t row, std::size_t column, const std::string& what)
      : std::runtime_error("CSV row " + std::to_string(row) + ", column " + std::to_string(column) + ": " + what),
        row_(row),
        column_(column) {}

  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

}  // namespace detail

/// Rows and columns in errors are 1-based.
inline MatrixBatch read_csv_batch(std::istream& in) {
  MatrixBatch batch;
  std::string line;
  std::size_t row = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++row;
    std::string_view rest = detail::trim(line);
    if (rest.empty()) continue;

    double v[kMatrixRecord];
    std::size_t col = 0;
    bool header = false;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view field = detail::trim(rest.substr(0, comma));
      if (col == kMatrixRecord) throw Error(row, col + 1, "expected 9 columns");
      if (!detail::parse_double(field, v[col])) {
        if (!seen_data && col == 0) {
          header = true;
          break;
        }
        throw Error(row, col + 1, "not a number: '" + std::string(field) + "'");
      }
      ++col;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    seen_data = true;
    if (header) continue;
    if (col != kMatrixRecord) throw Error(row, col + 1, "expected 9 columns, found " + std::to_string(col));
    batch.push_back(load_matrix(v));
  }
  if (in.bad()) throw Error(row, 0, "read failure");
  return batch;
}

/// Writes a header row and one row per matrix using the shortest
/// representation that round-trips (at most 17 significant digits).
inline void write_csv_batch(const MatrixBatch& batch, std::ostream& out) {
  out << kHeader << '\n';
  const auto values = batch.values();
  char buf[32];
  for (std::size_t i = 0; i < batch.size(); ++i) {
    for (std::size_t k = 0; k < kMatrixRecord; ++k) {
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, values[i * kMatrixRecord + k]);
      static_cast<void>(ec);
      if (k) out << ',';
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("CSV write failure");
}

}  // namespace herm3::csv
