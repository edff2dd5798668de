#include "infoq/bench.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>

#include "infoq/classify.h"
#include "infoq/errors.h"

namespace infoq {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void BenchConfig::validate() const {
  if (l == 0 || c == 0 || g == 0 || n == 0) {
    throw ArgumentError("bench: l, c, g and n must all be positive");
  }
}

BenchReport bench_scaling(const BenchConfig& config,
                          const std::vector<std::size_t>& g_values,
                          std::uint64_t seed,
                          const CompressorBackend& backend) {
  config.validate();
  if (g_values.empty()) throw ArgumentError("bench: empty g list");
  for (std::size_t g : g_values) {
    if (g == 0) throw ArgumentError("bench: g values must be positive");
  }
  const std::size_t g_max = *std::max_element(g_values.begin(), g_values.end());

  SyntheticCorpusConfig corpus_config;
  corpus_config.classes = config.c;
  corpus_config.scores_per_class = g_max;
  corpus_config.length = config.l;
  corpus_config.seed = seed;
  const std::vector<LabeledScore> pool = synthetic_corpus(corpus_config);

  const auto sources = make_markov_sources(config.c, seed);
  SplitMix64 query_rng(seed ^ 0xa0761d6478bd642fULL);
  std::vector<std::string> queries;
  for (std::size_t q = 0; q < config.n; ++q) {
    queries.push_back(sources[q % config.c].generate(config.l, query_rng));
  }

  BenchReport report;
  report.config = config;
  report.seed = seed;
  for (std::size_t g : g_values) {
    std::vector<LabeledScore> known;
    for (std::size_t c = 0; c < config.c; ++c) {
      for (std::size_t i = 0; i < g; ++i) known.push_back(pool[c * g_max + i]);
    }

    BenchRow row;
    row.g = g;
    const std::uint64_t builds_before = SuffixIndex::builds_performed();
    auto start = Clock::now();
    const std::vector<ComposerGroup> groups = build_groups(known);
    row.infoq_preprocess_seconds = seconds_since(start);
    const std::uint64_t builds_after = SuffixIndex::builds_performed();
    row.index_builds = builds_after - builds_before;

    start = Clock::now();
    for (const auto& q : queries) classify_infoq(q, groups);
    row.infoq_query_seconds =
        seconds_since(start) / static_cast<double>(queries.size());
    row.index_builds_during_queries =
        SuffixIndex::builds_performed() - builds_after;

    start = Clock::now();
    for (const auto& q : queries) classify_cdm(q, known, backend, 1);
    row.cdm_query_seconds =
        seconds_since(start) / static_cast<double>(queries.size());
    report.rows.push_back(row);
  }
  return report;
}

void write_bench_report(std::ostream& out, const BenchReport& report) {
  const auto& c = report.config;
  out << "# l=" << c.l << " c=" << c.c << " n=" << c.n
      << " seed=" << report.seed << '\n';
  out << "method g preprocess_s per_query_s index_builds\n";
  char line[160];
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof(line), "infoq %zu %.6f %.6f %llu\n", r.g,
                  r.infoq_preprocess_seconds, r.infoq_query_seconds,
                  static_cast<unsigned long long>(r.index_builds));
    out << line;
  }
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof(line), "cdm %zu %.6f %.6f %d\n", r.g, 0.0,
                  r.cdm_query_seconds, 0);
    out << line;
  }
}

}  // namespace infoq
