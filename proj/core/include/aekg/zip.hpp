#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace aekg {

struct ZipEntry {
  std::string name;
  std::uint16_t method = 0;  // 0 stored, 8 deflate
  std::uint32_t crc32 = 0;
  std::uint64_t compressed_size = 0;
  std::uint64_t uncompressed_size = 0;
  std::uint64_t local_header_offset = 0;

  bool is_directory() const { return !name.empty() && name.back() == '/'; }
};

// Reads the central directory of a ZIP (or ZIP64) archive and streams entry
// contents out, verifying sizes and CRC-32. Throws Error(corrupt_archive).
class ZipReader {
 public:
  explicit ZipReader(const std::filesystem::path& archive);

  const std::vector<ZipEntry>& entries() const { return entries_; }

  // Returns the number of bytes written.
  std::uint64_t extract(const ZipEntry& entry, std::ostream& out);

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::uint64_t file_size_ = 0;
  std::vector<ZipEntry> entries_;
};

}  // namespace aekg
