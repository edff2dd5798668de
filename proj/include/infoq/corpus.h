#ifndef INFOQ_CORPUS_H
#define INFOQ_CORPUS_H

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "infoq/classify.h"

namespace infoq {

struct ManifestEntry {
  std::string id;
  std::string label;
  std::filesystem::path path;
};

// One "score <id> <label> <path>" line per score; '#' comments and blank
// lines are skipped. Relative paths resolve against base_dir. Duplicate ids
// are rejected.
std::vector<ManifestEntry> parse_manifest(std::string_view text,
                                          const std::filesystem::path& base_dir);

std::string read_file(const std::filesystem::path& path);

// Pre-encoded '0'/'1' file, or a score document which is parsed and encoded.
std::string load_encoded(const std::filesystem::path& path);

std::vector<LabeledScore> load_corpus(const std::filesystem::path& manifest);

}  // namespace infoq

#endif  // INFOQ_CORPUS_H
