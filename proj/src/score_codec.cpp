#include "infoq/score_codec.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "infoq/errors.h"

namespace infoq {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

std::int64_t parse_int(std::string_view field, std::size_t line_no,
                       const char* name) {
  std::int64_t value = 0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line_no, std::string("field '") + name +
                                  "' is not a decimal integer: '" +
                                  std::string(field) + "'");
  }
  return value;
}

template <typename Strings>
std::string join_with_separator(const Strings& encoded) {
  if (encoded.empty()) {
    throw ArgumentError("concat_group: empty score list");
  }
  std::size_t total = encoded.size() - 1;
  for (const auto& s : encoded) total += s.size();
  std::string out;
  out.reserve(total);
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    if (i > 0) out.push_back(kGroupSeparator);
    out.append(encoded[i]);
  }
  return out;
}

}  // namespace

void validate_score(const Score& score) {
  if (score.num_steps < 0) {
    throw InvariantError("score '" + score.id + "': negative num_steps");
  }
  for (std::size_t i = 0; i < score.events.size(); ++i) {
    const NoteEvent& ev = score.events[i];
    std::ostringstream msg;
    msg << "score '" << score.id << "' event " << i << ": ";
    if (ev.key < 0 || ev.key >= kNumKeys) {
      msg << "key " << ev.key << " outside 0.." << kNumKeys - 1;
      throw InvariantError(msg.str());
    }
    if (ev.onset < 0 || ev.duration < 1) {
      msg << "onset must be >= 0 and duration >= 1";
      throw InvariantError(msg.str());
    }
    if (ev.onset + ev.duration > score.num_steps) {
      msg << "ends at step " << ev.onset + ev.duration << " past num_steps "
          << score.num_steps;
      throw InvariantError(msg.str());
    }
  }
}

Score parse_score_file(std::string_view text) {
  Score score;
  bool have_steps = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;

    if (fields[0] == "steps") {
      if (have_steps) throw ParseError(line_no, "duplicate 'steps' header");
      if (fields.size() != 2) {
        throw ParseError(line_no, "expected 'steps <T>'");
      }
      score.num_steps = parse_int(fields[1], line_no, "steps");
      if (score.num_steps < 0) {
        throw ParseError(line_no, "steps must be non-negative");
      }
      have_steps = true;
    } else if (fields[0] == "note") {
      if (!have_steps) {
        throw ParseError(line_no, "'note' before 'steps' header");
      }
      if (fields.size() != 4) {
        throw ParseError(line_no, "expected 'note <onset> <pitch> <duration>'");
      }
      NoteEvent ev;
      ev.onset = parse_int(fields[1], line_no, "onset");
      const std::int64_t pitch = parse_int(fields[2], line_no, "pitch");
      ev.duration = parse_int(fields[3], line_no, "duration");
      if (pitch < kLowestPitch || pitch > kHighestPitch) {
        throw RangeError(line_no, "pitch " + std::to_string(pitch) +
                                      " outside " +
                                      std::to_string(kLowestPitch) + ".." +
                                      std::to_string(kHighestPitch));
      }
      if (ev.onset < 0) throw ParseError(line_no, "onset must be >= 0");
      if (ev.duration < 1) throw ParseError(line_no, "duration must be >= 1");
      if (ev.onset + ev.duration > score.num_steps) {
        throw BoundsError(line_no, "note ends at step " +
                                       std::to_string(ev.onset + ev.duration) +
                                       " past steps " +
                                       std::to_string(score.num_steps));
      }
      ev.key = static_cast<int>(pitch - kLowestPitch);
      score.events.push_back(ev);
    } else {
      throw ParseError(line_no,
                       "unknown directive '" + std::string(fields[0]) + "'");
    }
  }
  if (!have_steps) throw ParseError(1, "missing 'steps' header");
  return score;
}

EncodedString encode_score(const Score& score) {
  validate_score(score);
  EncodedString out;
  out.chars.assign(static_cast<std::size_t>(score.num_steps) * kNumKeys, '0');
  for (const NoteEvent& ev : score.events) {
    for (std::int64_t t = ev.onset; t < ev.onset + ev.duration; ++t) {
      out.chars[static_cast<std::size_t>(t * kNumKeys + ev.key)] = '1';
    }
  }
  return out;
}

std::vector<std::pair<std::int64_t, int>> decode_cells(
    const EncodedString& encoded) {
  if (encoded.chars.size() % kNumKeys != 0) {
    throw InvariantError("encoded length is not a multiple of 88");
  }
  std::vector<std::pair<std::int64_t, int>> cells;
  for (std::size_t p = 0; p < encoded.chars.size(); ++p) {
    const char c = encoded.chars[p];
    if (c == '1') {
      cells.emplace_back(static_cast<std::int64_t>(p / kNumKeys),
                         static_cast<int>(p % kNumKeys));
    } else if (c != '0') {
      throw InvariantError("encoded string holds a non-binary character");
    }
  }
  return cells;
}

std::string concat_group(std::span<const std::string_view> encoded) {
  return join_with_separator(encoded);
}

std::string concat_group(std::span<const std::string> encoded) {
  return join_with_separator(encoded);
}

bool is_binary_string(std::string_view text) {
  return !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
    return c == '0' || c == '1';
  });
}

std::optional<std::string> parse_encoded_file(std::string_view text) {
  if (text.ends_with("\r\n")) {
    text.remove_suffix(2);
  } else if (text.ends_with('\n')) {
    text.remove_suffix(1);
  }
  if (!is_binary_string(text)) return std::nullopt;
  return std::string(text);
}

}  // namespace infoq
