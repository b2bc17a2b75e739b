#include "config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "aekg/error.hpp"
#include "aekg/text.hpp"

namespace aekg::cli {

namespace {

constexpr const char* kDefaultUrlTemplate =
    "https://fis.fda.gov/content/Exports/faers_xml_{year}q{quarter}.zip";

std::optional<bool> parse_bool(std::string_view s) {
  const std::string v = text::to_lower_ascii(text::trim(s));
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  return std::nullopt;
}

std::optional<long long> parse_int(std::string_view s) {
  s = text::trim(s);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  for (const auto& part : text::split(s, ',')) {
    auto t = text::trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

}  // namespace

EnvLookup process_environment() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::default_value: return "default";
    case Origin::file: return "file";
    case Origin::environment: return "env";
    case Origin::flag: return "flag";
  }
  return "default";
}

const std::map<std::string, std::string>& PipelineConfig::defaults() {
  static const std::map<std::string, std::string> table = [] {
    onto::OntologyConfig o;
    VaersOptions v;
    std::string symptoms;
    for (const auto& c : v.symptom_columns) symptoms += (symptoms.empty() ? "" : ",") + c;
    return std::map<std::string, std::string>{
        {"acquire.backoff_ms", "500"},
        {"acquire.dest_dir", "data/raw"},
        {"acquire.retries", "3"},
        {"acquire.url_template", kDefaultUrlTemplate},
        {"cypher.batch_size", "1000"},
        {"model.vocabulary_dir", ""},
        {"ontology.base_iri", o.base_iri},
        {"ontology.causal_links", "pairwise"},
        {"ontology.owl_class_typing", "true"},
        {"ontology.prefix", o.prefix},
        {"ontology.restrictions", onto::format_restrictions(o.restrictions)},
        {"vaers.encoding", "utf8"},
        {"vaers.id_column", v.id_column},
        {"vaers.symptom_columns", symptoms},
        {"vaers.vaccine_column", v.vaccine_column},
    };
  }();
  return table;
}

std::string PipelineConfig::env_name(const std::string& key) {
  std::string name = "AEKG_" + text::to_upper_ascii(key);
  for (char& c : name)
    if (c == '.') c = '_';
  return name;
}

void PipelineConfig::set(const std::string& key, std::string value, Origin origin) {
  auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("unknown configuration key '" + key + "'");
  it->second = {std::move(value), origin};
}

PipelineConfig PipelineConfig::resolve(const std::optional<std::filesystem::path>& config_path,
                                       const std::vector<std::string>& overrides,
                                       const EnvLookup& env) {
  PipelineConfig config;
  for (const auto& [key, value] : defaults()) config.values_[key] = {value, Origin::default_value};

  std::optional<std::filesystem::path> path = config_path;
  if (!path) {
    if (auto from_env = env("AEKG_CONFIG"); from_env && !from_env->empty()) path = *from_env;
  }
  if (path) {
    std::ifstream in(*path);
    if (!in) throw UsageError("cannot read config file " + path->string());
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
      auto t = text::trim(line);
      if (t.empty() || t.front() == '#' || t.front() == ';') continue;
      auto eq = t.find('=');
      if (eq == std::string_view::npos)
        throw UsageError(path->string() + ":" + std::to_string(lineno) + ": expected 'key = value'");
      const std::string key(text::trim(t.substr(0, eq)));
      if (!config.values_.contains(key))
        throw UsageError(path->string() + ":" + std::to_string(lineno) +
                         ": unknown configuration key '" + key + "'");
      config.set(key, std::string(text::trim(t.substr(eq + 1))), Origin::file);
    }
  }

  for (const auto& [key, unused] : defaults()) {
    if (auto v = env(env_name(key))) config.set(key, *v, Origin::environment);
  }

  for (const auto& o : overrides) {
    auto eq = o.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + o + "'");
    config.set(std::string(text::trim(std::string_view(o).substr(0, eq))),
               std::string(text::trim(std::string_view(o).substr(eq + 1))), Origin::flag);
  }

  config.validate();
  return config;
}

const std::string& PipelineConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("unknown configuration key '" + key + "'");
  return it->second.first;
}

Origin PipelineConfig::origin(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("unknown configuration key '" + key + "'");
  return it->second.second;
}

long long PipelineConfig::get_int(const std::string& key) const {
  auto v = parse_int(get(key));
  if (!v) throw UsageError(key + " must be an integer, got '" + get(key) + "'");
  return *v;
}

bool PipelineConfig::get_bool(const std::string& key) const {
  auto v = parse_bool(get(key));
  if (!v) throw UsageError(key + " must be true or false, got '" + get(key) + "'");
  return *v;
}

void PipelineConfig::validate() const {
  if (get_int("acquire.retries") < 0) throw UsageError("acquire.retries must be >= 0");
  if (get_int("acquire.backoff_ms") < 0) throw UsageError("acquire.backoff_ms must be >= 0");
  if (get_int("cypher.batch_size") < 1) throw UsageError("cypher.batch_size must be >= 1");
  try {
    onto::validate(ontology());
    vaers();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::string PipelineConfig::show(bool with_origin) const {
  std::ostringstream out;
  for (const auto& [key, entry] : values_) {
    out << key << " = " << entry.first;
    if (with_origin) out << "  # " << to_string(entry.second);
    out << '\n';
  }
  return out.str();
}

onto::OntologyConfig PipelineConfig::ontology() const {
  onto::OntologyConfig o;
  o.base_iri = get("ontology.base_iri");
  o.prefix = get("ontology.prefix");
  o.emit_owl_class_typing = get_bool("ontology.owl_class_typing");
  const std::string links = text::to_lower_ascii(get("ontology.causal_links"));
  if (links == "pairwise") {
    o.causal_links = onto::CausalLinkPolicy::pairwise;
  } else if (links == "none") {
    o.causal_links = onto::CausalLinkPolicy::none;
  } else {
    throw UsageError("ontology.causal_links must be pairwise or none, got '" + links + "'");
  }
  o.restrictions = onto::parse_restrictions(get("ontology.restrictions"));
  return o;
}

VaersOptions PipelineConfig::vaers() const {
  VaersOptions v;
  v.id_column = get("vaers.id_column");
  v.symptom_columns = split_list(get("vaers.symptom_columns"));
  v.vaccine_column = get("vaers.vaccine_column");
  v.encoding = parse_vaers_encoding(get("vaers.encoding"));
  if (v.id_column.empty()) throw UsageError("vaers.id_column must not be empty");
  return v;
}

CypherOptions PipelineConfig::cypher() const {
  CypherOptions c;
  c.batch_size = static_cast<std::size_t>(get_int("cypher.batch_size"));
  return c;
}

FetchOptions PipelineConfig::fetch() const {
  FetchOptions f;
  f.retries = static_cast<int>(get_int("acquire.retries"));
  f.backoff = std::chrono::milliseconds(get_int("acquire.backoff_ms"));
  return f;
}

}  // namespace aekg::cli
