#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aekg/acquire.hpp"
#include "aekg/cypher.hpp"
#include "aekg/ontology.hpp"
#include "aekg/vaers.hpp"

namespace aekg::cli {

// Bad command-line or configuration input; maps to exit code 64.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Reads the process environment.
EnvLookup process_environment();

enum class Origin { default_value, file, environment, flag };

std::string_view to_string(Origin origin);

// Effective configuration. Precedence: flags > environment > file > defaults.
class PipelineConfig {
 public:
  // Keys and default values, sorted by key.
  static const std::map<std::string, std::string>& defaults();

  // AEKG_<SECTION>_<KEY>, e.g. ontology.base_iri -> AEKG_ONTOLOGY_BASE_IRI.
  static std::string env_name(const std::string& key);

  // `config_path` falls back to the AEKG_CONFIG variable. `overrides` are
  // "key=value" strings. Throws UsageError for unknown keys, malformed lines
  // or values that do not parse.
  static PipelineConfig resolve(const std::optional<std::filesystem::path>& config_path,
                                const std::vector<std::string>& overrides,
                                const EnvLookup& env);

  const std::string& get(const std::string& key) const;
  Origin origin(const std::string& key) const;
  long long get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  // "key = value" lines in key order; readable back as a config file.
  std::string show(bool with_origin = false) const;

  onto::OntologyConfig ontology() const;
  VaersOptions vaers() const;
  CypherOptions cypher() const;
  FetchOptions fetch() const;

 private:
  void set(const std::string& key, std::string value, Origin origin);
  void validate() const;

  std::map<std::string, std::pair<std::string, Origin>> values_;
};

}  // namespace aekg::cli
