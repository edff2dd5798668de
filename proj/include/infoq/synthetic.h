#ifndef INFOQ_SYNTHETIC_H
#define INFOQ_SYNTHETIC_H

// Seeded synthetic corpora: each class is an order-2 Markov source over
// {'0','1'}. Used by the benchmark and by end-to-end evaluation runs where
// real scores are not available.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "infoq/classify.h"

namespace infoq {

inline constexpr std::uint64_t kDefaultSeed = 20170901;

// Deterministic across platforms (splitmix64), unlike the distributions in
// <random> whose algorithms are implementation defined.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)

 private:
  std::uint64_t state_;
};

struct MarkovSource {
  // Probability that the next bit is '1', indexed by the previous two bits
  // (older bit in the high position).
  std::array<double, 4> p_one{};

  std::string generate(std::size_t length, SplitMix64& rng) const;
};

std::vector<MarkovSource> make_markov_sources(std::size_t count,
                                              std::uint64_t seed);

struct SyntheticCorpusConfig {
  std::size_t classes = 5;
  std::size_t scores_per_class = 15;
  std::size_t length = 23 * 88;
  std::uint64_t seed = kDefaultSeed;
};

// Labels are "src1".."srcC", ids "src<c>-<nn>", grouped by class.
std::vector<LabeledScore> synthetic_corpus(const SyntheticCorpusConfig& config);

}  // namespace infoq

#endif  // INFOQ_SYNTHETIC_H
