#ifndef INFOQ_SCORE_CODEC_H
#define INFOQ_SCORE_CODEC_H

// Score documents and their binary piano-roll string form.
//
// A score is a grid of 88 keys by T time steps. The encoded string lays the
// grid out row by row: character 88 * step + key is '1' when that key sounds
// during that step and '0' otherwise.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace infoq {

inline constexpr int kNumKeys = 88;
inline constexpr int kLowestPitch = 21;   // A0
inline constexpr int kHighestPitch = 108; // C8
inline constexpr char kGroupSeparator = '#';

struct NoteEvent {
  std::int64_t onset = 0;     // time step index
  int key = 0;                // 0..87
  std::int64_t duration = 1;  // time steps, >= 1

  bool operator==(const NoteEvent&) const = default;
};

struct Score {
  std::string id;
  std::optional<std::string> composer;
  std::vector<NoteEvent> events;
  std::int64_t num_steps = 0;
};

// Binary piano-roll string. Length is always a multiple of 88.
struct EncodedString {
  std::string chars;

  std::int64_t num_steps() const {
    return static_cast<std::int64_t>(chars.size()) / kNumKeys;
  }
};

// Throws InvariantError naming the first violated NoteEvent/Score invariant.
void validate_score(const Score& score);

// Parses the line-oriented score document:
//   steps <T>
//   note <onset> <pitch> <duration>
// Lines starting with '#' and blank lines are ignored. Throws ParseError,
// RangeError (pitch outside 21..108) or BoundsError (onset + duration > T).
Score parse_score_file(std::string_view text);

EncodedString encode_score(const Score& score);

// Set of (step, key) cells that are on, sorted by position.
std::vector<std::pair<std::int64_t, int>> decode_cells(
    const EncodedString& encoded);

// Joins group members with a single '#' between consecutive strings so that
// no '0'/'1' pattern can straddle two scores.
std::string concat_group(std::span<const std::string_view> encoded);
std::string concat_group(std::span<const std::string> encoded);

// True when text is non-empty and only holds '0' and '1'.
bool is_binary_string(std::string_view text);

// Pre-encoded file: '0'/'1' characters with an optional trailing newline.
// Returns nullopt when the content is not in that form.
std::optional<std::string> parse_encoded_file(std::string_view text);

}  // namespace infoq

#endif  // INFOQ_SCORE_CODEC_H
