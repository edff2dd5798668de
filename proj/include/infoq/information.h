#ifndef INFOQ_INFORMATION_H
#define INFOQ_INFORMATION_H

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infoq/suffix_index.h"

namespace infoq {

// Non-negative number of bits, or infinite. Addition saturates at infinity.
class Bits {
 public:
  constexpr Bits() = default;
  explicit constexpr Bits(double value) : value_(value) {}

  static constexpr Bits infinite() {
    return Bits(std::numeric_limits<double>::infinity());
  }

  constexpr double value() const { return value_; }
  constexpr bool is_infinite() const {
    return value_ == std::numeric_limits<double>::infinity();
  }

  friend constexpr Bits operator+(Bits a, Bits b) {
    return Bits(a.value_ + b.value_);
  }
  Bits& operator+=(Bits other) {
    value_ += other.value_;
    return *this;
  }
  friend constexpr auto operator<=>(Bits, Bits) = default;

 private:
  double value_ = 0.0;
};

struct InfoResult {
  Bits total;
  std::vector<std::string> partition;
  std::vector<std::pair<std::string, Bits>> per_piece;

  // Candidate segments looked up by the DP, including failed extensions.
  std::size_t segments_evaluated = 0;
};

// Self-information -log2(p); infinite at p == 0. Throws ArgumentError when p
// is outside [0, 1].
Bits char_information(double p);

// Sum of single-character self-information against the index.
Bits info_characters(std::string_view query, const SuffixIndex& index);

// Minimum over all segmentations of the query of the summed segment
// self-information. Segments occurring fewer than twice in the indexed text
// have probability zero and are never used. Ties keep the longest final
// segment.
InfoResult info_min_partition(std::string_view query,
                              const SuffixIndex& index);

inline constexpr std::size_t kBruteForceMaxLength = 20;

// Enumerates all 2^(N-1) segmentations. Reference implementation for tests;
// throws ArgumentError for queries longer than kBruteForceMaxLength.
Bits brute_force_info(std::string_view query, const SuffixIndex& index);

// Total with 6 decimals, then one "<substring> <bits>" line per piece.
void write_info_report(std::ostream& out, const InfoResult& result);

// "inf" for infinite values, fixed with the given decimals otherwise.
std::string format_bits(Bits bits, int decimals = 6);

// Truncates toward zero, as in integer-valued summary tables.
std::string format_bits_truncated(Bits bits);

}  // namespace infoq

#endif  // INFOQ_INFORMATION_H
