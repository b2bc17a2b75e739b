#pragma once

#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include "aekg/error.hpp"
#include "aekg/faers.hpp"
#include "aekg/property_graph.hpp"
#include "aekg/version.hpp"

namespace aekg {

struct CypherOptions {
  // Reports (or nodes/relationships) embedded per UNWIND statement.
  std::size_t batch_size = 1000;
  std::string generator = std::string("aekg ") + version;
};

// Single-quoted Cypher string literal with backslash escapes.
std::string cypher_string(std::string_view s);

// Backtick-quotes an identifier unless it is a plain [A-Za-z_][A-Za-z0-9_]*.
std::string cypher_identifier(std::string_view s);

std::string cypher_value(const PropertyValue& v);

// Self-contained import script for a filtered FAERS batch. Each statement is
// an UNWIND over embedded report maps with MERGE on SafetyReport, Patient,
// Drug and AdverseEvent, SET for properties and FOREACH over the drug and
// reaction lists; executing it on an empty database reproduces
// build_faers_graph(batch). Returns the number of statements.
std::size_t emit_cypher_script(const CanonicalBatch& batch, std::ostream& out,
                               const VocabularySet& vocab = VocabularySet{},
                               const CypherOptions& options = {},
                               Diagnostics* diagnostics = nullptr);

// Script that recreates an arbitrary property graph: node MERGE statements per
// label followed by relationship MERGE statements per (type, source label,
// target label). `key_properties` names the merge property of each label.
std::size_t emit_graph_cypher(const PropertyGraph& graph, std::ostream& out,
                              const std::map<std::string, std::string>& key_properties,
                              const std::string& source_label,
                              const CypherOptions& options = {});

}  // namespace aekg
