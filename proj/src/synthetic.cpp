#include "infoq/synthetic.h"

#include <cstdio>

#include "infoq/errors.h"

namespace infoq {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::string MarkovSource::generate(std::size_t length, SplitMix64& rng) const {
  std::string out;
  out.reserve(length);
  unsigned context = static_cast<unsigned>(rng.next() & 3u);
  for (std::size_t i = 0; i < length; ++i) {
    const unsigned bit = rng.uniform() < p_one[context] ? 1u : 0u;
    out.push_back(bit ? '1' : '0');
    context = ((context << 1) | bit) & 3u;
  }
  return out;
}

std::vector<MarkovSource> make_markov_sources(std::size_t count,
                                              std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<MarkovSource> sources(count);
  for (auto& s : sources) {
    for (auto& p : s.p_one) p = 0.05 + 0.9 * rng.uniform();
  }
  return sources;
}

std::vector<LabeledScore> synthetic_corpus(const SyntheticCorpusConfig& config) {
  if (config.classes == 0 || config.scores_per_class == 0 || config.length == 0) {
    throw ArgumentError("synthetic_corpus: sizes must be positive");
  }
  const auto sources = make_markov_sources(config.classes, config.seed);
  SplitMix64 rng(config.seed ^ 0x5bd1e9955bd1e995ULL);
  std::vector<LabeledScore> corpus;
  corpus.reserve(config.classes * config.scores_per_class);
  for (std::size_t c = 0; c < config.classes; ++c) {
    const std::string label = "src" + std::to_string(c + 1);
    for (std::size_t i = 0; i < config.scores_per_class; ++i) {
      char id[64];
      std::snprintf(id, sizeof(id), "%s-%02zu", label.c_str(), i + 1);
      corpus.push_back({id, label, sources[c].generate(config.length, rng)});
    }
  }
  return corpus;
}

}  // namespace infoq
