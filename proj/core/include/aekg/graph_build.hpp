#pragma once

#include <vector>

#include "aekg/error.hpp"
#include "aekg/faers.hpp"
#include "aekg/model.hpp"
#include "aekg/property_graph.hpp"
#include "aekg/vaers.hpp"

namespace aekg {

namespace label {
inline constexpr const char* safety_report = "SafetyReport";
inline constexpr const char* patient = "Patient";
inline constexpr const char* drug = "Drug";
inline constexpr const char* adverse_event = "AdverseEvent";
inline constexpr const char* symptom = "Symptom";
inline constexpr const char* vaccine = "Vaccine";
}  // namespace label

namespace reltype {
inline constexpr const char* has_patient = "HAS_PATIENT";
inline constexpr const char* took = "TOOK";
inline constexpr const char* experienced = "EXPERIENCED";
inline constexpr const char* received = "RECEIVED";
}  // namespace reltype

// Property that holds the merge key of each label.
const std::map<std::string, std::string>& faers_key_properties();
const std::map<std::string, std::string>& vaers_key_properties();

// Report-level and patient-level properties for one report, coded values
// decoded through `vocab`. Unknown codes are kept verbatim and reported in
// `diagnostics`.
Properties report_properties(const SafetyReport& report,
                             const VocabularySet& vocab,
                             Diagnostics* diagnostics = nullptr);
Properties patient_properties(const SafetyReport& report,
                              const VocabularySet& vocab,
                              Diagnostics* diagnostics = nullptr);

// Distinct non-empty trimmed substances, first occurrence order.
std::vector<std::string> distinct_substances(const DrugRecord& drug);

// Merges one filtered batch into `graph`. Running it twice with the same
// batch leaves the graph unchanged.
void add_faers_batch(PropertyGraph& graph, const CanonicalBatch& batch,
                     const VocabularySet& vocab = VocabularySet{},
                     Diagnostics* diagnostics = nullptr);

PropertyGraph build_faers_graph(const CanonicalBatch& batch,
                                const VocabularySet& vocab = VocabularySet{},
                                Diagnostics* diagnostics = nullptr);

void add_vaers_cases(PropertyGraph& graph, const std::vector<VaersCase>& cases);

PropertyGraph build_vaers_graph(const std::vector<VaersCase>& cases);

}  // namespace aekg
