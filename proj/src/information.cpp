#include "infoq/information.h"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>

#include "infoq/errors.h"
#include "infoq/score_codec.h"

namespace infoq {
namespace {

void require_binary_query(std::string_view query, const char* op) {
  if (query.empty()) throw ArgumentError(std::string(op) + ": empty query");
  if (!is_binary_string(query)) {
    throw ArgumentError(std::string(op) +
                        ": query must only contain '0' and '1'");
  }
}

}  // namespace

Bits char_information(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError("char_information: probability outside [0, 1]");
  }
  if (p == 0.0) return Bits::infinite();
  // -log2(1) is -0.0; keep the sign clean for printing.
  return Bits(p == 1.0 ? 0.0 : -std::log2(p));
}

Bits info_characters(std::string_view query, const SuffixIndex& index) {
  require_binary_query(query, "info_characters");
  const Bits zero_bits = char_information(index.substring_probability("0"));
  const Bits one_bits = char_information(index.substring_probability("1"));
  Bits total;
  for (char c : query) total += (c == '0') ? zero_bits : one_bits;
  return total;
}

InfoResult info_min_partition(std::string_view query,
                              const SuffixIndex& index) {
  require_binary_query(query, "info_min_partition");
  const std::size_t n = query.size();
  const std::size_t text_length = index.size();

  std::vector<Bits> best(n + 1, Bits::infinite());
  std::vector<std::size_t> back(n + 1, 0);
  best[0] = Bits(0.0);

  InfoResult result;
  for (std::size_t i = 0; i < n; ++i) {
    if (best[i].is_infinite()) continue;
    const MatchRun run = index.match_extend(query, i);
    result.segments_evaluated += run.lookups;
    for (const auto& [length, count] : run.lengths_counts) {
      const Bits cost = char_information(
          frequency_minus_one_probability(count, length, text_length));
      const Bits candidate = best[i] + cost;
      // Strict comparison keeps the earliest start, i.e. the longest final
      // segment, among equal totals.
      if (candidate < best[i + length]) {
        best[i + length] = candidate;
        back[i + length] = i;
      }
    }
  }

  if (best[n].is_infinite()) {
    result.total = Bits::infinite();
    for (std::size_t i = 0; i < n; ++i) {
      std::string piece(query.substr(i, 1));
      const Bits bits = char_information(index.substring_probability(piece));
      result.per_piece.emplace_back(piece, bits);
      result.partition.push_back(std::move(piece));
    }
    return result;
  }

  std::vector<std::size_t> cuts;
  for (std::size_t j = n; j > 0; j = back[j]) cuts.push_back(j);
  // Pieces are re-scored left to right, which is the order the DP
  // accumulated them in, so the sum equals best[n] bit for bit.
  Bits running;
  std::size_t start = 0;
  for (auto it = cuts.rbegin(); it != cuts.rend(); ++it) {
    const std::size_t end = *it;
    std::string piece(query.substr(start, end - start));
    const Bits bits = char_information(index.substring_probability(piece));
    running += bits;
    result.per_piece.emplace_back(piece, bits);
    result.partition.push_back(std::move(piece));
    start = end;
  }
  result.total = running;
  return result;
}

Bits brute_force_info(std::string_view query, const SuffixIndex& index) {
  require_binary_query(query, "brute_force_info");
  const std::size_t n = query.size();
  if (n > kBruteForceMaxLength) {
    throw ArgumentError("brute_force_info: query longer than " +
                        std::to_string(kBruteForceMaxLength));
  }
  Bits best = Bits::infinite();
  const std::uint32_t partitions = std::uint32_t{1} << (n - 1);
  for (std::uint32_t mask = 0; mask < partitions; ++mask) {
    // Bit b set means a cut between positions b and b + 1.
    Bits total;
    std::size_t start = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
      const bool cut = pos + 1 == n || ((mask >> pos) & 1u);
      if (!cut) continue;
      total += char_information(
          index.substring_probability(query.substr(start, pos + 1 - start)));
      start = pos + 1;
    }
    if (total < best) best = total;
  }
  return best;
}

std::string format_bits(Bits bits, int decimals) {
  if (bits.is_infinite()) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, bits.value());
  return buf;
}

std::string format_bits_truncated(Bits bits) {
  if (bits.is_infinite()) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.0f", std::trunc(bits.value()));
  return buf;
}

void write_info_report(std::ostream& out, const InfoResult& result) {
  out << format_bits(result.total) << '\n';
  for (const auto& [piece, bits] : result.per_piece) {
    out << piece << ' ' << format_bits(bits) << '\n';
  }
}

}  // namespace infoq
