// Simulate a multilook scene, write it as HM3B, and invert it in chunks.
//
//   stream_scene [rows cols looks chunk]

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "herm3/herm3.hpp"

int main(int argc, char** argv) {
  using namespace herm3;
  std::size_t rows = 450, cols = 600, looks = 4, chunk = 65536;
  if (argc == 5) {
    rows = std::strtoull(argv[1], nullptr, 10);
    cols = std::strtoull(argv[2], nullptr, 10);
    looks = std::strtoull(argv[3], nullptr, 10);
    chunk = std::strtoull(argv[4], nullptr, 10);
  } else if (argc != 1) {
    std::fprintf(stderr, "usage: %s [rows cols looks chunk]\n", argv[0]);
    return 2;
  }

  GenConfig cfg;
  cfg.seed = 7;
  cfg.count = rows * cols;
  cfg.looks = looks;
  cfg.base_covariance = Herm3<double>{2.0, 1.0, 1.5, {0.3, 0.1}, {0.8, -0.2}, {0.1, 0.05}};
  std::stringstream file;
  hm3b::write_batch(simulate_multilook(cfg), file);

  std::stringstream results;
  const StreamSummary s = stream_process(file, results, chunk, Method::Fast);
  std::printf("%zux%zu pixels, %zu looks, chunk %zu\n", rows, cols, looks, chunk);
  std::printf("processed %llu, singular %llu, result bytes %zu\n", static_cast<unsigned long long>(s.processed),
              static_cast<unsigned long long>(s.singular), results.str().size());

  // Mean determinant over the scene from the result records.
  results.seekg(0);
  const ResultBatch r = hm3b::read_results(results);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i].ok()) sum += r[i].det;
  std::printf("mean det over Ok pixels %.6g\n", sum / static_cast<double>(r.size() - s.failed));
}
