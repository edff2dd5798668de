#include "infoq/cdm.h"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <bit>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <unordered_map>

#include "infoq/errors.h"

namespace infoq {
namespace {

constexpr std::uint32_t kInitialEntries = 256;
constexpr std::uint32_t kMaxEntries = 1u << 16;
constexpr int kMinCodeWidth = 9;

class BitCounter {
 public:
  void put(std::uint32_t /*code*/, int width) { bits_ += width; }
  std::size_t bytes() const { return (bits_ + 7) / 8; }

 private:
  std::size_t bits_ = 0;
};

class BitPacker {
 public:
  void put(std::uint32_t code, int width) {
    for (int b = width - 1; b >= 0; --b) {
      if (fill_ == 0) out_.push_back(0);
      if ((code >> b) & 1u) out_.back() |= static_cast<std::uint8_t>(0x80u >> fill_);
      fill_ = (fill_ + 1) % 8;
    }
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
  int fill_ = 0;
};

template <typename Sink>
void lzw_run(std::string_view data, Sink& sink) {
  // (prefix code << 8 | next byte) -> code
  std::unordered_map<std::uint32_t, std::uint32_t> dict;
  dict.reserve(std::min<std::size_t>(data.size(), kMaxEntries));
  std::uint32_t dict_size = kInitialEntries;

  auto width = [&] {
    return std::max(kMinCodeWidth, static_cast<int>(std::bit_width(dict_size - 1)));
  };

  std::uint32_t match = static_cast<std::uint8_t>(data[0]);
  for (std::size_t i = 1; i < data.size(); ++i) {
    const auto byte = static_cast<std::uint8_t>(data[i]);
    const std::uint32_t key = (match << 8) | byte;
    if (auto it = dict.find(key); it != dict.end()) {
      match = it->second;
      continue;
    }
    sink.put(match, width());
    if (dict_size < kMaxEntries) dict.emplace(key, dict_size++);
    match = byte;
  }
  sink.put(match, width());
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

// Temporary file removed on scope exit.
class TempInput {
 public:
  explicit TempInput(std::string_view data) {
    std::string pattern =
        (std::filesystem::temp_directory_path() / "infoq-cdm-XXXXXX").string();
    const int fd = ::mkstemp(pattern.data());
    if (fd < 0) throw BackendError("cannot create temporary input file", -1);
    path_ = pattern;
    std::size_t written = 0;
    while (written < data.size()) {
      const ssize_t n = ::write(fd, data.data() + written, data.size() - written);
      if (n <= 0) {
        ::close(fd);
        std::filesystem::remove(path_);
        throw BackendError("cannot write temporary input file", -1);
      }
      written += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  ~TempInput() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempInput(const TempInput&) = delete;
  TempInput& operator=(const TempInput&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::size_t external_size(const std::string& command, std::string_view data) {
  if (command.empty()) throw BackendError("external backend: empty command", -1);
  TempInput input(data);
  const std::string quoted = shell_quote(input.path());
  std::string cmd;
  constexpr std::string_view kPlaceholder = "{in}";
  if (command.find(kPlaceholder) == std::string::npos) {
    cmd = command + " < " + quoted;
  } else {
    for (std::size_t pos = 0; pos < command.size();) {
      if (command.compare(pos, kPlaceholder.size(), kPlaceholder) == 0) {
        cmd += quoted;
        pos += kPlaceholder.size();
      } else {
        cmd.push_back(command[pos++]);
      }
    }
  }

  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    throw BackendError("external backend: cannot start '" + command + "'", -1);
  }
  std::array<char, 1 << 14> buf;
  std::size_t total = 0;
  while (true) {
    const std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe);
    total += n;
    if (n < buf.size()) break;
  }
  const int status = ::pclose(pipe);
  if (status != 0) {
    const int code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status)
                                                          : status;
    throw BackendError("external backend: '" + command + "' exited with status " +
                           std::to_string(code),
                       code);
  }
  return total;
}

}  // namespace

CompressorBackend CompressorBackend::identity(std::size_t offset) {
  return {"identity", CompressorKind::kIdentity, offset, {}};
}

CompressorBackend CompressorBackend::lzw(std::size_t offset) {
  return {"lzw", CompressorKind::kBuiltinLzw, offset, {}};
}

CompressorBackend CompressorBackend::external(std::string command,
                                              std::size_t offset) {
  return {"external", CompressorKind::kExternal, offset, std::move(command)};
}

std::vector<std::uint8_t> lzw_encode(std::string_view data) {
  if (data.empty()) throw ArgumentError("lzw_encode: empty data");
  BitPacker packer;
  lzw_run(data, packer);
  return packer.take();
}

std::size_t lzw_encode_size(std::string_view data) {
  if (data.empty()) throw ArgumentError("lzw_encode_size: empty data");
  BitCounter counter;
  lzw_run(data, counter);
  return counter.bytes();
}

std::size_t compress_size(const CompressorBackend& backend,
                          std::string_view data) {
  if (data.empty()) throw ArgumentError("compress_size: empty data");
  std::size_t raw = 0;
  switch (backend.kind) {
    case CompressorKind::kIdentity:
      raw = data.size();
      break;
    case CompressorKind::kBuiltinLzw:
      raw = lzw_encode_size(data);
      break;
    case CompressorKind::kExternal:
      raw = external_size(backend.command, data);
      break;
  }
  if (backend.offset >= raw) {
    throw OffsetError("offset " + std::to_string(backend.offset) +
                      " is not below compressed size " + std::to_string(raw));
  }
  return raw - backend.offset;
}

double cdm_with_sizes(const CompressorBackend& backend, std::string_view x,
                      std::string_view y, std::size_t size_x,
                      std::size_t size_y) {
  if (x.empty() || y.empty()) throw ArgumentError("cdm: empty input");
  std::string joined;
  joined.reserve(x.size() + y.size());
  joined.append(x).append(y);
  const std::size_t size_xy = compress_size(backend, joined);
  return static_cast<double>(size_xy) / static_cast<double>(size_x + size_y);
}

double cdm(const CompressorBackend& backend, std::string_view x,
           std::string_view y) {
  if (x.empty() || y.empty()) throw ArgumentError("cdm: empty input");
  return cdm_with_sizes(backend, x, y, compress_size(backend, x),
                        compress_size(backend, y));
}

}  // namespace infoq
