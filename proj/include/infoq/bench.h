#ifndef INFOQ_BENCH_H
#define INFOQ_BENCH_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "infoq/cdm.h"
#include "infoq/synthetic.h"

namespace infoq {

// l: average encoded length, c: classes, g: scores per class, n: queries.
struct BenchConfig {
  std::size_t l = 2000;
  std::size_t c = 5;
  std::size_t g = 15;
  std::size_t n = 10;

  void validate() const;  // throws ArgumentError unless all positive
};

struct BenchRow {
  std::size_t g = 0;
  double infoq_preprocess_seconds = 0.0;
  double infoq_query_seconds = 0.0;  // mean per query
  double cdm_query_seconds = 0.0;    // mean per query
  std::uint64_t index_builds = 0;    // during pre-processing
  std::uint64_t index_builds_during_queries = 0;
};

struct BenchReport {
  BenchConfig config;
  std::uint64_t seed = kDefaultSeed;
  std::vector<BenchRow> rows;
};

// Synthetic corpus of c order-2 Markov classes. For each g in g_values the
// first g scores of every class form the known set; the same n queries (drawn
// round-robin from the classes) are classified by infoq after one
// pre-processing pass, and by 1-NN CDM under the given backend.
BenchReport bench_scaling(const BenchConfig& config,
                          const std::vector<std::size_t>& g_values,
                          std::uint64_t seed = kDefaultSeed,
                          const CompressorBackend& backend =
                              CompressorBackend::lzw());

void write_bench_report(std::ostream& out, const BenchReport& report);

}  // namespace infoq

#endif  // INFOQ_BENCH_H
