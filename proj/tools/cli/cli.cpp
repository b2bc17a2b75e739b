#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "aekg/acquire.hpp"
#include "aekg/cypher.hpp"
#include "aekg/error.hpp"
#include "aekg/faers.hpp"
#include "aekg/graph_build.hpp"
#include "aekg/ontology.hpp"
#include "aekg/rdf/serialize.hpp"
#include "aekg/vaers.hpp"
#include "aekg/version.hpp"

namespace aekg::cli {

namespace fs = std::filesystem;

namespace {

// A failure with a predetermined exit code.
struct Failure : std::runtime_error {
  Failure(int code, const std::string& message) : std::runtime_error(message), code(code) {}
  int code;
};

constexpr std::size_t kMaxDiagnostics = 20;

std::ifstream open_input(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw Failure(exit_data, "input not found: " + path);
  std::ifstream in(path, mode);
  if (!in) throw Failure(exit_data, "cannot read input: " + path);
  return in;
}

// Writes through `fn` to `path`, or to `out` when path is "-".
void write_output(const std::string& path, std::ostream& out,
                  const std::function<void(std::ostream&)>& fn) {
  if (path == "-") {
    fn(out);
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Failure(exit_io, "cannot write output: " + path);
  fn(file);
  file.close();
  if (!file) throw Failure(exit_io, "write failed: " + path);
}

void print_diagnostics(const Diagnostics& diagnostics, std::ostream& err) {
  const std::size_t shown = std::min(diagnostics.size(), kMaxDiagnostics);
  for (std::size_t i = 0; i < shown; ++i)
    err << "warning: " << diagnostics[i].kind << ": " << diagnostics[i].detail << '\n';
  if (diagnostics.size() > shown)
    err << "warning: " << diagnostics.size() - shown << " more warnings suppressed\n";
}

VocabularySet load_vocabulary(const PipelineConfig& config) {
  VocabularySet vocab;
  const std::string& dir = config.get("model.vocabulary_dir");
  if (!dir.empty()) {
    if (!fs::is_directory(dir)) throw Failure(exit_data, "vocabulary directory not found: " + dir);
    vocab.load_directory(dir);
  }
  return vocab;
}

CanonicalBatch read_batch(const std::string& path) {
  auto in = open_input(path, std::ios::binary);
  try {
    return read_canonical_json(in);
  } catch (const Error& e) {
    throw Failure(exit_data, path + ": " + e.what());
  }
}

std::string join_file_names(const std::vector<std::string>& paths) {
  std::string out;
  for (const auto& p : paths) out += (out.empty() ? "" : ",") + fs::path(p).filename().string();
  return out;
}

// ---- commands ---------------------------------------------------------------

struct ConvertArgs {
  std::vector<std::string> inputs;
  std::string output;
  std::string drop_log;
  std::string source_label;
};

int cmd_convert(const ConvertArgs& a, std::ostream& out, std::ostream& err) {
  ReportFilter filter(a.source_label.empty() ? join_file_names(a.inputs) : a.source_label);
  for (const auto& path : a.inputs) {
    auto in = open_input(path, std::ios::binary);
    try {
      FaersXmlReader reader(in);
      while (auto report = reader.next()) filter.add(std::move(*report));
      err << "parsed " << path << ": " << reader.stats().reports << " reports, "
          << reader.stats().skipped_elements << " unmapped elements\n";
    } catch (const Error& e) {
      throw Failure(exit_data, path + ": " + e.what());
    }
  }
  CanonicalBatch batch = std::move(filter).finish();

  write_output(a.output, out, [&](std::ostream& os) { write_canonical_json(batch, os); });
  if (!a.drop_log.empty()) {
    write_output(a.drop_log, out, [&](std::ostream& os) {
      for (const auto& entry : batch.drop_log) {
        nlohmann::ordered_json j;
        j["report"] = entry.report;
        j["reasons"] = nlohmann::ordered_json::array();
        for (auto r : entry.reasons) j["reasons"].push_back(std::string(to_string(r)));
        os << j.dump() << '\n';
      }
    });
  }
  std::ostream& summary = a.output == "-" ? err : out;
  summary << "kept=" << batch.reports.size() << " dropped=" << batch.drop_log.size() << '\n';
  return exit_ok;
}

struct CypherArgs {
  std::string input;
  std::string output;
  std::optional<std::size_t> batch_size;
};

int cmd_cypher(const CypherArgs& a, const PipelineConfig& config, std::ostream& out,
               std::ostream& err) {
  const CanonicalBatch batch = read_batch(a.input);
  const VocabularySet vocab = load_vocabulary(config);
  CypherOptions options = config.cypher();
  if (a.batch_size) options.batch_size = *a.batch_size;
  Diagnostics diagnostics;
  std::size_t statements = 0;
  write_output(a.output, out, [&](std::ostream& os) {
    statements = emit_cypher_script(batch, os, vocab, options, &diagnostics);
  });
  print_diagnostics(diagnostics, err);
  std::ostream& summary = a.output == "-" ? err : out;
  summary << "statements=" << statements << " reports=" << batch.reports.size() << '\n';
  return exit_ok;
}

struct OwlArgs {
  std::string input;
  std::string stem;
  std::optional<std::size_t> limit;
  std::string format = "both";
};

int cmd_owl(const OwlArgs& a, const PipelineConfig& config, std::ostream& out,
            std::ostream& err) {
  CanonicalBatch batch = read_batch(a.input);
  if (a.limit && batch.reports.size() > *a.limit) batch.reports.resize(*a.limit);
  const onto::OntologyConfig ontology_config = config.ontology();
  rdf::TripleGraph graph;
  try {
    graph = onto::build_ontology(batch, ontology_config);
  } catch (const Error& e) {
    throw Failure(exit_data, e.what());
  }

  auto write = [&](const std::string& ext, auto serialize) {
    const std::string path = a.stem + ext;
    write_output(path, out, [&](std::ostream& os) { serialize(graph, os); });
    err << "wrote " << path << '\n';
  };
  if (a.format == "ttl" || a.format == "both")
    write(".ttl", [](const rdf::TripleGraph& g, std::ostream& os) { rdf::serialize_turtle(g, os); });
  if (a.format == "owl" || a.format == "both")
    write(".owl", [](const rdf::TripleGraph& g, std::ostream& os) { rdf::serialize_rdfxml(g, os); });
  out << "triples=" << graph.size() << " reports=" << batch.reports.size() << '\n';
  return exit_ok;
}

struct VaersArgs {
  std::string data;
  std::string symptoms;
  std::string vaccines;
  std::string output;
  std::string emit;
};

std::string infer_vaers_emit(const std::string& output) {
  const std::string ext = fs::path(output).extension().string();
  if (ext == ".cypher" || ext == ".cql") return "cypher";
  if (ext == ".json") return "stats-json";
  return "stats";
}

int cmd_vaers(const VaersArgs& a, const PipelineConfig& config, std::ostream& out,
              std::ostream& err) {
  auto data = open_input(a.data, std::ios::binary);
  auto symptoms = open_input(a.symptoms, std::ios::binary);
  auto vaccines = open_input(a.vaccines, std::ios::binary);
  VaersOptions options = config.vaers();
  options.file_names = {a.data, a.symptoms, a.vaccines};
  VaersJoin join;
  try {
    join = parse_vaers_files(data, symptoms, vaccines, options);
  } catch (const Error& e) {
    throw Failure(exit_data, e.what());
  }
  print_diagnostics(join.warnings, err);
  err << join_report(join) << '\n';

  const PropertyGraph graph = build_vaers_graph(join.cases);
  const std::string emit = a.emit.empty() ? infer_vaers_emit(a.output) : a.emit;
  write_output(a.output, out, [&](std::ostream& os) {
    if (emit == "cypher") {
      CypherOptions options = config.cypher();
      emit_graph_cypher(graph, os, vaers_key_properties(), fs::path(a.data).filename().string(),
                        options);
    } else if (emit == "stats-json") {
      os << format_stats_json(graph_stats(graph));
    } else {
      os << format_stats(graph_stats(graph));
    }
  });
  return exit_ok;
}

struct StatsArgs {
  std::string input;
  std::string output = "-";
  std::string format = "text";
  std::size_t top_k = 10;
};

int cmd_stats(const StatsArgs& a, const PipelineConfig& config, std::ostream& out,
              std::ostream& err) {
  const CanonicalBatch batch = read_batch(a.input);
  Diagnostics diagnostics;
  const PropertyGraph graph = build_faers_graph(batch, load_vocabulary(config), &diagnostics);
  print_diagnostics(diagnostics, err);
  const GraphStats stats = graph_stats(graph, a.top_k);
  write_output(a.output, out, [&](std::ostream& os) {
    if (a.format == "json")
      os << format_stats_json(stats);
    else
      os << format_stats(stats);
  });
  return exit_ok;
}

struct FetchArgs {
  int year = 0;
  int quarter = 0;
  std::string dest;
  bool extract = false;
  std::string extract_dir;
};

int cmd_fetch(const FetchArgs& a, const PipelineConfig& config, std::ostream& out,
              std::ostream& err) {
  const QuarterRef ref{a.year, a.quarter};
  try {
    validate(ref);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const fs::path dest = a.dest.empty() ? fs::path(config.get("acquire.dest_dir")) : fs::path(a.dest);
  CurlTransport transport;
  FetchOptions options = config.fetch();
  options.sleep = [&err](std::chrono::milliseconds d) {
    err << "retrying in " << d.count() << " ms\n";
    std::this_thread::sleep_for(d);
  };
  const FetchResult result =
      fetch_quarter(ref, config.get("acquire.url_template"), dest, transport, options);
  if (result.cached)
    out << "cached " << result.path.string() << '\n';
  else
    out << "downloaded " << result.path.string() << " attempts=" << result.attempts << '\n';
  if (a.extract) {
    const fs::path target = a.extract_dir.empty() ? dest / result.path.stem() : fs::path(a.extract_dir);
    for (const auto& p : extract_archive(result.path, target)) out << "extracted " << p.string() << '\n';
  }
  return exit_ok;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::http_failure: return exit_unavailable;
    case ErrorCode::io_error:
    case ErrorCode::disk_full: return exit_io;
    case ErrorCode::template_error: return exit_usage;
    default: return exit_data;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env) {
  CLI::App app{"Adverse-event knowledge graph pipeline: FAERS/VAERS ingestion, "
               "Cypher import scripts and OWL ontologies.",
               "aekg"};
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_path;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "Configuration file (section.key = value); default $AEKG_CONFIG");
  app.add_option("--set", overrides, "Override a configuration key: key=value (repeatable)")
      ->take_all();

  ConvertArgs convert_args;
  auto* convert = app.add_subcommand("convert", "FAERS XML to canonical JSON");
  convert->add_option("-i,--input", convert_args.inputs, "FAERS XML files")->required();
  convert->add_option("-o,--output", convert_args.output, "Canonical JSON output, or -")->required();
  convert->add_option("--drop-log", convert_args.drop_log, "Write dropped reports as JSON lines");
  convert->add_option("--source-label", convert_args.source_label,
                      "Label recorded in the output (default: input file names)");

  CypherArgs cypher_args;
  auto* cypher = app.add_subcommand("cypher", "Canonical JSON to a Cypher import script");
  cypher->add_option("-i,--input", cypher_args.input, "Canonical JSON")->required();
  cypher->add_option("-o,--output", cypher_args.output, "Cypher script, or -")->required();
  cypher->add_option("--batch-size", cypher_args.batch_size, "Reports per UNWIND statement")
      ->check(CLI::PositiveNumber);

  OwlArgs owl_args;
  auto* owl = app.add_subcommand("owl", "Canonical JSON to an OWL ontology");
  owl->add_option("-i,--input", owl_args.input, "Canonical JSON")->required();
  owl->add_option("--output-stem", owl_args.stem, "Writes <stem>.ttl and/or <stem>.owl")->required();
  owl->add_option("--limit", owl_args.limit, "Use only the first N reports")
      ->check(CLI::NonNegativeNumber);
  owl->add_option("--format", owl_args.format, "ttl, owl or both")
      ->check(CLI::IsMember({"ttl", "owl", "both"}));

  VaersArgs vaers_args;
  auto* vaers = app.add_subcommand("vaers", "VAERS CSV files to a graph script or statistics");
  vaers->add_option("--data", vaers_args.data, "VAERSDATA CSV")->required();
  vaers->add_option("--symptoms", vaers_args.symptoms, "VAERSSYMPTOMS CSV")->required();
  vaers->add_option("--vaccines", vaers_args.vaccines, "VAERSVAX CSV")->required();
  vaers->add_option("-o,--output", vaers_args.output, "Output file, or -")->required();
  vaers->add_option("--emit", vaers_args.emit,
                    "cypher, stats or stats-json (default: from the output extension)")
      ->check(CLI::IsMember({"cypher", "stats", "stats-json"}));

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "Property-graph statistics for canonical JSON");
  stats->add_option("-i,--input", stats_args.input, "Canonical JSON")->required();
  stats->add_option("-o,--output", stats_args.output, "Output file, or - (default)");
  stats->add_option("--format", stats_args.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  stats->add_option("--top-k", stats_args.top_k, "Highest-degree nodes to list");

  FetchArgs fetch_args;
  auto* fetch = app.add_subcommand("fetch", "Download a FAERS quarterly archive");
  fetch->add_option("--year", fetch_args.year, "Year (2004 or later)")->required();
  fetch->add_option("--quarter", fetch_args.quarter, "Quarter 1..4")
      ->required()
      ->check(CLI::Range(1, 4));
  fetch->add_option("--dest", fetch_args.dest, "Destination directory (default acquire.dest_dir)");
  fetch->add_flag("--extract", fetch_args.extract, "Extract the XML files after download");
  fetch->add_option("--extract-dir", fetch_args.extract_dir,
                    "Extraction directory (default <dest>/<archive stem>)");

  bool show_origin = false;
  auto* config_cmd = app.add_subcommand("config", "Inspect the resolved configuration");
  config_cmd->require_subcommand(1);
  auto* show = config_cmd->add_subcommand("show", "Print the effective configuration");
  show->add_flag("--origin", show_origin, "Annotate each key with where its value came from");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? exit_ok : exit_usage;
  }

  try {
    const PipelineConfig config = PipelineConfig::resolve(
        config_path ? std::optional<fs::path>(*config_path) : std::nullopt, overrides, env);
    if (*convert) return cmd_convert(convert_args, out, err);
    if (*cypher) return cmd_cypher(cypher_args, config, out, err);
    if (*owl) return cmd_owl(owl_args, config, out, err);
    if (*vaers) return cmd_vaers(vaers_args, config, out, err);
    if (*stats) return cmd_stats(stats_args, config, out, err);
    if (*fetch) return cmd_fetch(fetch_args, config, out, err);
    if (*show) {
      out << config.show(show_origin);
      return exit_ok;
    }
    return exit_usage;
  } catch (const UsageError& e) {
    err << "aekg: usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const Failure& e) {
    err << "aekg: error: " << e.what() << '\n';
    return e.code;
  } catch (const Error& e) {
    err << "aekg: error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "aekg: error: " << e.what() << '\n';
    return exit_io;
  } catch (const std::exception& e) {
    err << "aekg: error: " << e.what() << '\n';
    return exit_data;
  }
}

}  // namespace aekg::cli
