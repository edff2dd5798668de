#ifndef INFOQ_SUFFIX_INDEX_H
#define INFOQ_SUFFIX_INDEX_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace infoq {

// (substring length, occurrence count) for successive prefixes of a query.
struct MatchRun {
  std::size_t start = 0;
  std::vector<std::pair<std::size_t, std::size_t>> lengths_counts;

  // Number of count lookups spent producing this run, including the one
  // that fell below two occurrences.
  std::size_t lookups = 0;
};

// Suffix array over a group text, answering substring counts by binary
// search over the sorted suffixes. Immutable once built; concurrent
// read-only queries are safe.
class SuffixIndex {
 public:
  // Throws ArgumentError on empty text.
  static SuffixIndex build(std::string text);

  // Adopts an existing (text, suffix array) pair after checking that sa is a
  // permutation of 0..L-1 in sorted suffix order. Throws InvariantError.
  static SuffixIndex adopt(std::string text, std::vector<std::size_t> sa);

  const std::string& text() const { return text_; }
  const std::vector<std::size_t>& suffix_array() const { return sa_; }
  std::size_t size() const { return text_.size(); }

  // Overlapping occurrences of pattern. Throws ArgumentError on empty pattern.
  std::size_t count_occurrences(std::string_view pattern) const;

  // Frequency-minus-one estimate: (count - 1) / (L - |t| + 1), or 0 when the
  // pattern is absent or longer than the text.
  double substring_probability(std::string_view pattern) const;

  // Counts of query[start, start + m) for m = 1, 2, ... while the count stays
  // at least 2. Throws ArgumentError when start is out of range.
  MatchRun match_extend(std::string_view query, std::size_t start) const;

  // SQIX persistence: "SQIX", version byte 1, u64le L, text bytes, L x u64le sa.
  void save(std::ostream& out) const;
  static SuffixIndex load(std::istream& in);

  // Number of suffix arrays constructed by build() in this process. Lets
  // benchmarks check how often pre-processing actually ran.
  static std::uint64_t builds_performed();

 private:
  SuffixIndex(std::string text, std::vector<std::size_t> sa)
      : text_(std::move(text)), sa_(std::move(sa)) {}

  // Half-open range of sa whose suffixes start with pattern.
  std::pair<std::size_t, std::size_t> equal_range(
      std::string_view pattern) const;

  std::string text_;
  std::vector<std::size_t> sa_;
};

// Prefix-doubling construction with radix passes, O(L log L).
std::vector<std::size_t> build_suffix_array(std::string_view text);

// Probability of a pattern that occurs count times in a text of length
// text_length, under the frequency-minus-one estimator.
double frequency_minus_one_probability(std::size_t count,
                                       std::size_t pattern_length,
                                       std::size_t text_length);

}  // namespace infoq

#endif  // INFOQ_SUFFIX_INDEX_H
