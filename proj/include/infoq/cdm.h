#ifndef INFOQ_CDM_H
#define INFOQ_CDM_H

// Compression-based dissimilarity: C(xy) / (C(x) + C(y)), where C is the
// (optionally offsetted) compressed size under a pluggable backend.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace infoq {

enum class CompressorKind { kIdentity, kBuiltinLzw, kExternal };

struct CompressorBackend {
  std::string name = "identity";
  CompressorKind kind = CompressorKind::kIdentity;
  std::size_t offset = 0;
  // External kind only: program and arguments, "{in}" replaced by the path of
  // a temporary file holding the data. The byte count of stdout is the size.
  std::string command;

  static CompressorBackend identity(std::size_t offset = 0);
  static CompressorBackend lzw(std::size_t offset = 0);
  static CompressorBackend external(std::string command,
                                    std::size_t offset = 0);
};

// Built-in LZW, fully specified so sizes are reproducible:
//   - dictionary starts with the 256 single-byte strings (codes 0..255);
//   - each emitted code is written with width max(9, bit_width(D - 1)) where
//     D is the dictionary size at the time of emission;
//   - after every code except the last, the string "match + next byte" is
//     added while D < 65536; once D reaches 65536 the dictionary is frozen;
//   - codes are packed most significant bit first; the last byte is padded
//     with zero bits.
std::vector<std::uint8_t> lzw_encode(std::string_view data);

// Same bit accounting as lzw_encode without materializing the output:
// ceil(total emitted bits / 8). Requires non-empty data.
std::size_t lzw_encode_size(std::string_view data);

// Raw size under the backend minus backend.offset. Throws ArgumentError on
// empty data, BackendError when an external command fails, OffsetError when
// the offset is not below the raw size.
std::size_t compress_size(const CompressorBackend& backend,
                          std::string_view data);

// x then y, no separator. Not symmetrized.
double cdm(const CompressorBackend& backend, std::string_view x,
           std::string_view y);

// Same as cdm() with C(x) and C(y) supplied by the caller, so repeated
// comparisons against one string need not recompress it.
double cdm_with_sizes(const CompressorBackend& backend, std::string_view x,
                      std::string_view y, std::size_t size_x,
                      std::size_t size_y);

}  // namespace infoq

#endif  // INFOQ_CDM_H
