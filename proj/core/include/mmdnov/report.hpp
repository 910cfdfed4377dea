#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "mmdnov/kernels.hpp"
#include "mmdnov/perm_test.hpp"
#include "mmdnov/study.hpp"

namespace mmdnov {

/// Schema tag carried by every result document.
inline constexpr std::string_view kSchemaVersion = "mmdnov/1";

// Serialization into the shared result document. Absent values become
// explicit nulls. Worker counts never appear in these objects; they belong
// in the document's "volatile" section.

nlohmann::json to_json(const KernelSpec& spec);
/// Resolved configuration including the pinned generator name.
nlohmann::json to_json(const TestConfig& cfg);
nlohmann::json to_json(const TestResult& result);
nlohmann::json to_json(const MmdMatrixResult& result);
nlohmann::json to_json(const PowerCurveResult& result);

/// {"schema", "command", "config", "result"}.
nlohmann::json make_document(std::string_view command, nlohmann::json config, nlohmann::json result);

/// Square CSV: header row and first column hold the labels, absent cells
/// are empty strings.
std::string cell_matrix_csv(const std::vector<std::string>& labels, const CellMatrix& cells);

/// Long form: pair,label_a,label_b,n,rate,trials (rate empty when absent,
/// trials = completed trials).
std::string power_csv(const PowerCurveResult& result);

}  // namespace mmdnov
