#include "infoq/corpus.h"

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "infoq/errors.h"
#include "infoq/score_codec.h"

namespace infoq {

std::vector<ManifestEntry> parse_manifest(
    std::string_view text, const std::filesystem::path& base_dir) {
  std::vector<ManifestEntry> entries;
  std::set<std::string> ids;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string directive;
    if (!(fields >> directive) || directive.front() == '#') continue;
    if (directive != "score") {
      throw ParseError(line_no, "unknown directive '" + directive + "'");
    }
    ManifestEntry e;
    std::string path;
    std::string extra;
    if (!(fields >> e.id >> e.label >> path) || (fields >> extra)) {
      throw ParseError(line_no, "expected 'score <id> <label> <path>'");
    }
    if (!ids.insert(e.id).second) {
      throw ParseError(line_no, "duplicate score id '" + e.id + "'");
    }
    e.path = std::filesystem::path(path);
    if (e.path.is_relative()) e.path = base_dir / e.path;
    entries.push_back(std::move(e));
  }
  return entries;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string load_encoded(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  if (auto encoded = parse_encoded_file(content)) return *std::move(encoded);
  try {
    Score score = parse_score_file(content);
    score.id = path.filename().string();
    return encode_score(score).chars;
  } catch (const RangeError& e) {
    throw RangeError(e.line(), path.string() + ": " + e.detail());
  } catch (const BoundsError& e) {
    throw BoundsError(e.line(), path.string() + ": " + e.detail());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.detail());
  }
}

std::vector<LabeledScore> load_corpus(const std::filesystem::path& manifest) {
  const auto entries =
      parse_manifest(read_file(manifest), manifest.parent_path());
  std::vector<LabeledScore> corpus;
  corpus.reserve(entries.size());
  for (const auto& e : entries) {
    std::string text = load_encoded(e.path);
    if (text.empty()) {
      throw ArgumentError("score '" + e.id + "' encodes to an empty string");
    }
    corpus.push_back({e.id, e.label, std::move(text)});
  }
  return corpus;
}

}  // namespace infoq
