#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace aekg {

// One FAERS quarterly release. FAERS quarterly data starts in 2004.
struct QuarterRef {
  int year = 2004;
  int quarter = 1;

  bool operator==(const QuarterRef&) const = default;
};

// Throws Error(invalid_argument) for year < 2004 or quarter outside 1..4.
void validate(const QuarterRef& ref);

// Substitutes {year} and {quarter}. Throws Error(template_error) when either
// placeholder is missing.
std::string expand_url_template(const std::string& url_template,
                                 const QuarterRef& ref);

// File name for a URL: the last path segment without query or fragment.
std::string archive_file_name(const std::string& url);

// Downloads a URL into a file. Implementations throw HttpError (status 0 for
// transport failures) or Error(disk_full).
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void download(const std::string& url,
                        const std::filesystem::path& destination) = 0;
};

// libcurl-backed transport; follows redirects. A transfer that stalls for
// longer than the connect timeout is aborted.
class CurlTransport : public Transport {
 public:
  explicit CurlTransport(std::chrono::seconds connect_timeout = std::chrono::seconds(30));
  void download(const std::string& url,
                const std::filesystem::path& destination) override;

 private:
  std::chrono::seconds connect_timeout_;
};

struct FetchOptions {
  int retries = 3;
  std::chrono::milliseconds backoff{500};  // doubled after every failed attempt
  // When set, an existing file only counts as cached if its size matches.
  std::optional<std::uintmax_t> expected_size;
  std::function<void(std::chrono::milliseconds)> sleep;  // defaults to sleep_for
};

struct FetchResult {
  std::filesystem::path path;
  bool cached = false;
  int attempts = 0;
};

// Downloads into dest_dir via a ".part" file renamed on completion. Transient
// failures (no response, 429, 5xx) are retried with exponential backoff.
FetchResult fetch_quarter(const QuarterRef& ref, const std::string& url_template,
                          const std::filesystem::path& dest_dir,
                          Transport& transport, const FetchOptions& options = {});

// Extracts the *.xml entries (case-insensitive) of a ZIP archive under
// dest_dir and returns their paths in archive order. Throws
// Error(path_traversal) before writing anything if any entry would resolve
// outside dest_dir, and Error(corrupt_archive) for damaged archives.
std::vector<std::filesystem::path> extract_archive(
    const std::filesystem::path& archive, const std::filesystem::path& dest_dir);

}  // namespace aekg
