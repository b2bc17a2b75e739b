#include "aekg/zip.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>

#include "aekg/error.hpp"

namespace aekg {

namespace {

constexpr std::uint32_t kEocdSig = 0x06054b50;
constexpr std::uint32_t kZip64LocatorSig = 0x07064b50;
constexpr std::uint32_t kZip64EocdSig = 0x06064b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kLocalSig = 0x04034b50;

std::uint16_t u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}
std::uint64_t u64(const unsigned char* p) {
  return static_cast<std::uint64_t>(u32(p)) |
         (static_cast<std::uint64_t>(u32(p + 4)) << 32);
}

[[noreturn]] void corrupt(const std::filesystem::path& p, const std::string& why) {
  throw Error(ErrorCode::corrupt_archive, p.string() + ": " + why);
}

}  // namespace

ZipReader::ZipReader(const std::filesystem::path& archive)
    : path_(archive), in_(archive, std::ios::binary) {
  if (!in_) throw Error(ErrorCode::io_error, "cannot open " + archive.string());
  in_.seekg(0, std::ios::end);
  file_size_ = static_cast<std::uint64_t>(in_.tellg());
  if (file_size_ < 22) corrupt(path_, "too small to be a ZIP archive");

  auto read_at = [&](std::uint64_t off, std::size_t n) {
    std::vector<unsigned char> buf(n);
    if (off + n > file_size_) corrupt(path_, "structure extends past end of file");
    in_.clear();
    in_.seekg(static_cast<std::streamoff>(off));
    in_.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) corrupt(path_, "short read");
    return buf;
  };

  // end of central directory record, searching back over a possible comment
  const std::uint64_t tail_len = std::min<std::uint64_t>(file_size_, 22 + 0xFFFF);
  const std::uint64_t tail_off = file_size_ - tail_len;
  auto tail = read_at(tail_off, static_cast<std::size_t>(tail_len));
  std::int64_t eocd = -1;
  for (std::int64_t i = static_cast<std::int64_t>(tail.size()) - 22; i >= 0; --i) {
    if (u32(&tail[static_cast<std::size_t>(i)]) == kEocdSig) {
      eocd = i;
      break;
    }
  }
  if (eocd < 0) corrupt(path_, "no end-of-central-directory record");
  const unsigned char* e = &tail[static_cast<std::size_t>(eocd)];
  std::uint64_t count = u16(e + 10);
  std::uint64_t cd_size = u32(e + 12);
  std::uint64_t cd_offset = u32(e + 16);

  const std::uint64_t eocd_abs = tail_off + static_cast<std::uint64_t>(eocd);
  if (eocd_abs >= 20) {
    auto loc = read_at(eocd_abs - 20, 20);
    if (u32(loc.data()) == kZip64LocatorSig) {
      auto z = read_at(u64(&loc[8]), 56);
      if (u32(z.data()) != kZip64EocdSig) corrupt(path_, "bad ZIP64 end record");
      count = u64(&z[32]);
      cd_size = u64(&z[40]);
      cd_offset = u64(&z[48]);
    }
  }
  if (cd_offset + cd_size > file_size_) corrupt(path_, "central directory out of range");

  auto cd = read_at(cd_offset, static_cast<std::size_t>(cd_size));
  std::size_t pos = 0;
  for (std::uint64_t n = 0; n < count; ++n) {
    if (pos + 46 > cd.size() || u32(&cd[pos]) != kCentralSig)
      corrupt(path_, "bad central directory entry");
    const unsigned char* h = &cd[pos];
    ZipEntry entry;
    const std::uint16_t flags = u16(h + 8);
    entry.method = u16(h + 10);
    entry.crc32 = u32(h + 16);
    entry.compressed_size = u32(h + 20);
    entry.uncompressed_size = u32(h + 24);
    const std::size_t name_len = u16(h + 28), extra_len = u16(h + 30),
                      comment_len = u16(h + 32);
    entry.local_header_offset = u32(h + 42);
    if (pos + 46 + name_len + extra_len + comment_len > cd.size())
      corrupt(path_, "central directory entry overruns directory");
    entry.name.assign(reinterpret_cast<const char*>(h + 46), name_len);
    if (flags & 0x1) corrupt(path_, "encrypted entry " + entry.name);

    // ZIP64 extended information
    const unsigned char* x = h + 46 + name_len;
    std::size_t xp = 0;
    while (xp + 4 <= extra_len) {
      const std::uint16_t id = u16(x + xp), len = u16(x + xp + 2);
      if (xp + 4 + len > extra_len) break;
      if (id == 0x0001) {
        std::size_t q = xp + 4;
        auto take = [&](std::uint64_t& field) {
          if (field != 0xFFFFFFFFu) return;
          if (q + 8 > xp + 4 + len) corrupt(path_, "short ZIP64 extra field");
          field = u64(x + q);
          q += 8;
        };
        take(entry.uncompressed_size);
        take(entry.compressed_size);
        take(entry.local_header_offset);
      }
      xp += 4 + len;
    }
    entries_.push_back(std::move(entry));
    pos += 46 + name_len + extra_len + comment_len;
  }
}

std::uint64_t ZipReader::extract(const ZipEntry& entry, std::ostream& out) {
  std::array<unsigned char, 30> local{};
  if (entry.local_header_offset + 30 > file_size_) corrupt(path_, "local header out of range");
  in_.clear();
  in_.seekg(static_cast<std::streamoff>(entry.local_header_offset));
  in_.read(reinterpret_cast<char*>(local.data()), 30);
  if (in_.gcount() != 30 || u32(local.data()) != kLocalSig)
    corrupt(path_, "bad local header for " + entry.name);
  const std::uint64_t data_off =
      entry.local_header_offset + 30 + u16(&local[26]) + u16(&local[28]);
  if (data_off + entry.compressed_size > file_size_)
    corrupt(path_, "data for " + entry.name + " extends past end of file");
  in_.seekg(static_cast<std::streamoff>(data_off));

  std::vector<unsigned char> inbuf(1 << 16), outbuf(1 << 16);
  std::uint64_t remaining = entry.compressed_size;
  std::uint64_t written = 0;
  uLong crc = crc32(0L, Z_NULL, 0);

  auto sink = [&](const unsigned char* data, std::size_t n) {
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n));
    if (!out) throw Error(ErrorCode::io_error, "write failed extracting " + entry.name);
    crc = crc32(crc, data, static_cast<uInt>(n));
    written += n;
  };
  auto fill = [&]() -> std::size_t {
    auto want = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, inbuf.size()));
    in_.read(reinterpret_cast<char*>(inbuf.data()), static_cast<std::streamsize>(want));
    if (static_cast<std::size_t>(in_.gcount()) != want)
      corrupt(path_, "short read in " + entry.name);
    remaining -= want;
    return want;
  };

  if (entry.method == 0) {
    while (remaining > 0) {
      auto n = fill();
      sink(inbuf.data(), n);
    }
  } else if (entry.method == 8) {
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK)
      throw Error(ErrorCode::io_error, "zlib initialization failed");
    struct Guard {
      z_stream* zs;
      ~Guard() { inflateEnd(zs); }
    } guard{&zs};
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
      if (zs.avail_in == 0) {
        if (remaining == 0) corrupt(path_, "truncated deflate stream in " + entry.name);
        zs.avail_in = static_cast<uInt>(fill());
        zs.next_in = inbuf.data();
      }
      zs.avail_out = static_cast<uInt>(outbuf.size());
      zs.next_out = outbuf.data();
      rc = inflate(&zs, Z_NO_FLUSH);
      if (rc != Z_OK && rc != Z_STREAM_END)
        corrupt(path_, "deflate error in " + entry.name);
      sink(outbuf.data(), outbuf.size() - zs.avail_out);
    }
  } else {
    corrupt(path_, "unsupported compression method " + std::to_string(entry.method) +
                       " for " + entry.name);
  }

  if (written != entry.uncompressed_size)
    corrupt(path_, "size mismatch for " + entry.name);
  if (static_cast<std::uint32_t>(crc) != entry.crc32)
    corrupt(path_, "CRC mismatch for " + entry.name);
  return written;
}

}  // namespace aekg
