#pragma once

// Out-of-core inversion: HM3B matrices in, HM3B results out, `chunk`
// matrices at a time. Memory use is O(chunk) and the output bytes do not
// depend on the chunk size or worker count.

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "herm3/batch.hpp"
#include "herm3/hm3b.hpp"

namespace herm3 {

struct StreamSummary {
  std::uint64_t processed = 0;
  std::uint64_t failed = 0;
  std::uint64_t singular = 0;
  std::uint64_t not_positive_definite = 0;
};

inline StreamSummary stream_process(std::istream& in, std::ostream& out, std::size_t chunk, Method method,
                                    std::size_t workers = 1) {
  if (chunk < 1) throw std::invalid_argument("chunk must be at least 1");
  const hm3b::Header h = hm3b::read_header(in);
  hm3b::expect_kind(h, hm3b::PayloadKind::Matrices);
  hm3b::write_header(out, {hm3b::kVersion, hm3b::PayloadKind::Results, h.count});

  StreamSummary summary;
  MatrixBatch batch;
  ResultBatch results;
  while (summary.processed < h.count) {
    const auto n = static_cast<std::size_t>(std::min<std::uint64_t>(chunk, h.count - summary.processed));
    if (batch.size() != n) batch = MatrixBatch(n);
    hm3b::read_matrix_records(in, n, hm3b::kHeaderSize + summary.processed * hm3b::kMatrixBytes, batch.values());
    invert_batch(batch, method, workers, results);
    hm3b::write_result_records(out, results.values(), results.statuses(),
                               hm3b::kHeaderSize + summary.processed * hm3b::kResultBytes);
    summary.processed += n;
    summary.singular += results.count(Status::Singular);
    summary.not_positive_definite += results.count(Status::NotPositiveDefinite);
  }
  hm3b::expect_end(in, hm3b::kHeaderSize + h.count * hm3b::kMatrixBytes);
  summary.failed = summary.singular + summary.not_positive_definite;
  return summary;
}

}  // namespace herm3
