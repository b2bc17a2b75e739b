#include "aekg/acquire.hpp"

#include <curl/curl.h>
#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "aekg/error.hpp"
#include "aekg/text.hpp"
#include "aekg/zip.hpp"

namespace aekg {

namespace fs = std::filesystem;

void validate(const QuarterRef& ref) {
  if (ref.year < 2004)
    throw Error(ErrorCode::invalid_argument,
                "year " + std::to_string(ref.year) + " precedes FAERS quarterly data (2004)");
  if (ref.quarter < 1 || ref.quarter > 4)
    throw Error(ErrorCode::invalid_argument,
                "quarter must be 1..4, got " + std::to_string(ref.quarter));
}

std::string expand_url_template(const std::string& url_template, const QuarterRef& ref) {
  validate(ref);
  auto replace_all = [](std::string s, std::string_view key, const std::string& value,
                        bool& found) {
    for (std::size_t pos = s.find(key); pos != std::string::npos;
         pos = s.find(key, pos + value.size())) {
      s.replace(pos, key.size(), value);
      found = true;
    }
    return s;
  };
  bool has_year = false, has_quarter = false;
  std::string out = replace_all(url_template, "{year}", std::to_string(ref.year), has_year);
  out = replace_all(out, "{quarter}", std::to_string(ref.quarter), has_quarter);
  if (!has_year || !has_quarter)
    throw Error(ErrorCode::template_error,
                "URL template must contain {year} and {quarter}: " + url_template);
  return out;
}

std::string archive_file_name(const std::string& url) {
  std::string path = url.substr(0, url.find_first_of("?#"));
  auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  if (name.empty() || name == "." || name == "..")
    throw Error(ErrorCode::template_error, "URL has no file name: " + url);
  return name;
}

namespace {

struct CurlGlobal {
  CurlGlobal() { curl_global_init(CURL_GLOBAL_DEFAULT); }
  ~CurlGlobal() { curl_global_cleanup(); }
};

struct WriteState {
  std::FILE* file;
  bool disk_full = false;
};

std::size_t write_cb(char* data, std::size_t size, std::size_t n, void* user) {
  auto* st = static_cast<WriteState*>(user);
  std::size_t wrote = std::fwrite(data, size, n, st->file);
  if (wrote != n && errno == ENOSPC) st->disk_full = true;
  return wrote * size;
}

bool is_transient(long status) { return status == 0 || status == 429 || status >= 500; }

// Serializes fetches of one destination within the process (mutex) and
// across processes (flock on a sidecar file).
class FileLock {
 public:
  explicit FileLock(const fs::path& target) {
    static std::mutex registry_mutex;
    static std::map<std::string, std::shared_ptr<std::mutex>> registry;
    {
      std::lock_guard g(registry_mutex);
      auto& m = registry[target.string()];
      if (!m) m = std::make_shared<std::mutex>();
      mutex_ = m;
    }
    mutex_->lock();
    fs::path lock_path = target;
    lock_path += ".lock";
    fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
    mutex_->unlock();
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  std::shared_ptr<std::mutex> mutex_;
  int fd_ = -1;
};

}  // namespace

CurlTransport::CurlTransport(std::chrono::seconds connect_timeout)
    : connect_timeout_(connect_timeout) {
  static CurlGlobal global;
}

void CurlTransport::download(const std::string& url, const fs::path& destination) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> file(std::fopen(destination.c_str(), "wb"),
                                                       &std::fclose);
  if (!file) {
    if (errno == ENOSPC) throw Error(ErrorCode::disk_full, "no space for " + destination.string());
    throw Error(ErrorCode::io_error, "cannot create " + destination.string() + ": " +
                                         std::strerror(errno));
  }
  std::unique_ptr<CURL, void (*)(CURL*)> curl(curl_easy_init(), &curl_easy_cleanup);
  if (!curl) throw HttpError(0, url, "curl initialization failed");

  WriteState state{file.get()};
  char errbuf[CURL_ERROR_SIZE] = {0};
  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_CONNECTTIMEOUT, static_cast<long>(connect_timeout_.count()));
  curl_easy_setopt(curl.get(), CURLOPT_LOW_SPEED_LIMIT, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_LOW_SPEED_TIME, static_cast<long>(connect_timeout_.count()));
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, &write_cb);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &state);
  curl_easy_setopt(curl.get(), CURLOPT_ERRORBUFFER, errbuf);
  curl_easy_setopt(curl.get(), CURLOPT_NOSIGNAL, 1L);

  CURLcode rc = curl_easy_perform(curl.get());
  long status = 0;
  curl_easy_getinfo(curl.get(), CURLINFO_RESPONSE_CODE, &status);
  if (state.disk_full) throw Error(ErrorCode::disk_full, "disk full writing " + destination.string());
  if (rc != CURLE_OK) throw HttpError(0, url, errbuf[0] ? errbuf : curl_easy_strerror(rc));
  if (status < 200 || status >= 300) throw HttpError(status, url, "");
  if (std::fflush(file.get()) != 0) {
    if (errno == ENOSPC) throw Error(ErrorCode::disk_full, "disk full writing " + destination.string());
    throw Error(ErrorCode::io_error, "write failed for " + destination.string());
  }
}

FetchResult fetch_quarter(const QuarterRef& ref, const std::string& url_template,
                          const fs::path& dest_dir, Transport& transport,
                          const FetchOptions& options) {
  const std::string url = expand_url_template(url_template, ref);
  std::error_code ec;
  fs::create_directories(dest_dir, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot create " + dest_dir.string() + ": " + ec.message());

  FetchResult result;
  result.path = dest_dir / archive_file_name(url);
  FileLock lock(result.path);

  if (fs::is_regular_file(result.path) &&
      (!options.expected_size || fs::file_size(result.path) == *options.expected_size)) {
    result.cached = true;
    return result;
  }

  fs::path part = result.path;
  part += ".part";
  auto sleep = options.sleep ? options.sleep : [](std::chrono::milliseconds d) {
    std::this_thread::sleep_for(d);
  };
  std::chrono::milliseconds delay = options.backoff;
  const int max_attempts = 1 + std::max(0, options.retries);

  for (;;) {
    ++result.attempts;
    try {
      transport.download(url, part);
      if (options.expected_size && fs::file_size(part) != *options.expected_size)
        throw HttpError(0, url, "size mismatch");
      fs::rename(part, result.path, ec);
      if (ec) throw Error(ErrorCode::io_error, "cannot rename " + part.string() + ": " + ec.message());
      return result;
    } catch (const HttpError& e) {
      fs::remove(part, ec);
      if (!is_transient(e.status()) || result.attempts >= max_attempts) throw;
    } catch (...) {
      fs::remove(part, ec);
      throw;
    }
    sleep(delay);
    delay *= 2;
  }
}

std::vector<fs::path> extract_archive(const fs::path& archive, const fs::path& dest_dir) {
  ZipReader zip(archive);
  std::vector<const ZipEntry*> selected;
  for (const auto& entry : zip.entries()) {
    const fs::path name(entry.name);
    if (entry.name.find('\\') != std::string::npos || name.is_absolute() ||
        entry.name.starts_with('/'))
      throw Error(ErrorCode::path_traversal, "absolute entry name in archive: " + entry.name);
    for (const auto& part : name)
      if (part == "..")
        throw Error(ErrorCode::path_traversal, "entry escapes destination: " + entry.name);
    if (entry.is_directory()) continue;
    const std::string ext = text::to_lower_ascii(name.extension().string());
    if (ext == ".xml") selected.push_back(&entry);
  }

  std::vector<fs::path> out;
  for (const ZipEntry* entry : selected) {
    fs::path target = dest_dir / fs::path(entry->name);
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw Error(ErrorCode::io_error, "cannot create " + target.parent_path().string());
    fs::path part = target;
    part += ".part";
    {
      std::ofstream file(part, std::ios::binary | std::ios::trunc);
      if (!file) throw Error(ErrorCode::io_error, "cannot create " + part.string());
      try {
        zip.extract(*entry, file);
        file.flush();
        if (!file) throw Error(ErrorCode::io_error, "write failed for " + part.string());
      } catch (...) {
        file.close();
        fs::remove(part, ec);
        throw;
      }
    }
    fs::rename(part, target, ec);
    if (ec) throw Error(ErrorCode::io_error, "cannot rename " + part.string());
    out.push_back(target);
  }
  return out;
}

}  // namespace aekg
