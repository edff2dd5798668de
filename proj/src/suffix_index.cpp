#include "infoq/suffix_index.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <istream>
#include <numeric>
#include <ostream>

#include "infoq/errors.h"

namespace infoq {
namespace {

constexpr std::array<char, 4> kMagic = {'S', 'Q', 'I', 'X'};
constexpr std::uint8_t kFormatVersion = 1;

std::atomic<std::uint64_t> g_builds{0};

void write_u64le(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> buf;
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf.data(), buf.size());
}

std::uint64_t read_u64le(std::istream& in) {
  std::array<unsigned char, 8> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (!in) throw InvariantError("SQIX: truncated file");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

void check_permutation(const std::vector<std::size_t>& sa, std::size_t n) {
  if (sa.size() != n) {
    throw InvariantError("suffix array size does not match text length");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t p : sa) {
    if (p >= n || seen[p]) {
      throw InvariantError("suffix array is not a permutation of 0..L-1");
    }
    seen[p] = true;
  }
}

}  // namespace

std::vector<std::size_t> build_suffix_array(std::string_view text) {
  const std::size_t n = text.size();
  std::vector<std::size_t> sa(n);
  if (n == 0) return sa;

  // Ranks start at 1 so that 0 can stand for "past the end".
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    rank[i] = static_cast<unsigned char>(text[i]) + 1;
  }
  const std::size_t buckets = std::max<std::size_t>(257, n + 1);
  std::vector<std::size_t> count(buckets);
  std::vector<std::size_t> order(n);
  std::vector<std::size_t> next_rank(n);

  std::iota(order.begin(), order.end(), std::size_t{0});
  auto counting_sort_by_rank = [&] {
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t i : order) ++count[rank[i]];
    std::size_t sum = 0;
    for (auto& c : count) {
      const std::size_t here = c;
      c = sum;
      sum += here;
    }
    for (std::size_t i : order) sa[count[rank[i]]++] = i;
  };
  counting_sort_by_rank();

  for (std::size_t k = 1;; k *= 2) {
    // Order by second key: suffixes with nothing k positions ahead come first.
    std::size_t w = 0;
    for (std::size_t i = n - std::min(k, n); i < n; ++i) order[w++] = i;
    for (std::size_t i = 0; i < n; ++i) {
      if (sa[i] >= k) order[w++] = sa[i] - k;
    }
    counting_sort_by_rank();

    auto second = [&](std::size_t i) { return i + k < n ? rank[i + k] : 0; };
    next_rank[sa[0]] = 1;
    std::size_t classes = 1;
    for (std::size_t i = 1; i < n; ++i) {
      const std::size_t a = sa[i - 1];
      const std::size_t b = sa[i];
      if (rank[a] != rank[b] || second(a) != second(b)) ++classes;
      next_rank[b] = classes;
    }
    rank.swap(next_rank);
    if (classes == n || k >= n) break;
  }
  return sa;
}

double frequency_minus_one_probability(std::size_t count,
                                       std::size_t pattern_length,
                                       std::size_t text_length) {
  if (count < 1 || pattern_length == 0 || pattern_length > text_length) {
    return 0.0;
  }
  return static_cast<double>(count - 1) /
         static_cast<double>(text_length - pattern_length + 1);
}

SuffixIndex SuffixIndex::build(std::string text) {
  if (text.empty()) throw ArgumentError("build_index: empty text");
  auto sa = build_suffix_array(text);
  g_builds.fetch_add(1, std::memory_order_relaxed);
  return SuffixIndex(std::move(text), std::move(sa));
}

std::uint64_t SuffixIndex::builds_performed() {
  return g_builds.load(std::memory_order_relaxed);
}

SuffixIndex SuffixIndex::adopt(std::string text, std::vector<std::size_t> sa) {
  if (text.empty()) throw ArgumentError("build_index: empty text");
  check_permutation(sa, text.size());
  std::string_view view(text);
  for (std::size_t i = 1; i < sa.size(); ++i) {
    if (view.substr(sa[i - 1]) > view.substr(sa[i])) {
      throw InvariantError("suffix array is not in sorted suffix order");
    }
  }
  return SuffixIndex(std::move(text), std::move(sa));
}

std::pair<std::size_t, std::size_t> SuffixIndex::equal_range(
    std::string_view pattern) const {
  const std::string_view view(text_);
  const std::size_t m = pattern.size();
  auto prefix = [&](std::size_t pos) { return view.substr(pos, m); };
  auto lo = std::lower_bound(
      sa_.begin(), sa_.end(), pattern,
      [&](std::size_t pos, std::string_view p) { return prefix(pos) < p; });
  auto hi = std::upper_bound(
      lo, sa_.end(), pattern,
      [&](std::string_view p, std::size_t pos) { return p < prefix(pos); });
  return {static_cast<std::size_t>(lo - sa_.begin()),
          static_cast<std::size_t>(hi - sa_.begin())};
}

std::size_t SuffixIndex::count_occurrences(std::string_view pattern) const {
  if (pattern.empty()) throw ArgumentError("count_occurrences: empty pattern");
  if (pattern.size() > text_.size()) return 0;
  auto [lo, hi] = equal_range(pattern);
  return hi - lo;
}

double SuffixIndex::substring_probability(std::string_view pattern) const {
  if (pattern.empty()) {
    throw ArgumentError("substring_probability: empty pattern");
  }
  return frequency_minus_one_probability(count_occurrences(pattern),
                                         pattern.size(), text_.size());
}

MatchRun SuffixIndex::match_extend(std::string_view query,
                                   std::size_t start) const {
  if (start >= query.size()) {
    throw ArgumentError("match_extend: start " + std::to_string(start) +
                        " out of range for query of length " +
                        std::to_string(query.size()));
  }
  MatchRun run;
  run.start = start;
  const std::size_t n = text_.size();
  auto lo = sa_.begin();
  auto hi = sa_.end();
  // Every suffix in [lo, hi) shares the first m - 1 query characters, so the
  // character at offset m - 1 is non-decreasing across the range.
  for (std::size_t m = 1; start + m <= query.size(); ++m) {
    const std::size_t offset = m - 1;
    const int want = static_cast<unsigned char>(query[start + offset]);
    auto key = [&](std::size_t pos) {
      return pos + offset < n ? static_cast<unsigned char>(text_[pos + offset])
                              : -1;
    };
    lo = std::lower_bound(lo, hi, want, [&](std::size_t pos, int c) {
      return key(pos) < c;
    });
    hi = std::upper_bound(lo, hi, want, [&](int c, std::size_t pos) {
      return c < key(pos);
    });
    ++run.lookups;
    const auto count = static_cast<std::size_t>(hi - lo);
    if (count < 2) break;
    run.lengths_counts.emplace_back(m, count);
  }
  return run;
}

void SuffixIndex::save(std::ostream& out) const {
  out.write(kMagic.data(), kMagic.size());
  out.put(static_cast<char>(kFormatVersion));
  write_u64le(out, text_.size());
  out.write(text_.data(), static_cast<std::streamsize>(text_.size()));
  for (std::size_t p : sa_) write_u64le(out, p);
  if (!out) throw IoError("SQIX: write failed");
}

SuffixIndex SuffixIndex::load(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw InvariantError("SQIX: bad magic");
  const int version = in.get();
  if (version != kFormatVersion) {
    throw InvariantError("SQIX: unsupported version " +
                         std::to_string(version));
  }
  const std::uint64_t n = read_u64le(in);
  if (n == 0) throw InvariantError("SQIX: empty text");
  std::string text(static_cast<std::size_t>(n), '\0');
  in.read(text.data(), static_cast<std::streamsize>(n));
  if (!in) throw InvariantError("SQIX: truncated text");
  std::vector<std::size_t> sa(static_cast<std::size_t>(n));
  for (auto& p : sa) p = static_cast<std::size_t>(read_u64le(in));
  check_permutation(sa, text.size());
  for (std::size_t i = 1; i < sa.size(); ++i) {
    if (static_cast<unsigned char>(text[sa[i - 1]]) >
        static_cast<unsigned char>(text[sa[i]])) {
      throw InvariantError("SQIX: suffix array out of order");
    }
  }
  return SuffixIndex(std::move(text), std::move(sa));
}

}  // namespace infoq
