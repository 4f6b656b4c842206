#pragma once

// Plain-text outputs: CSV curves (header row, 17 significant digits) and
// JSON documents for reports and gridded fields. Non-finite numbers are
// written as "nan" in CSV and null in JSON; both read back as NaN.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "legcorner/corner_solver.hpp"

namespace legcorner {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// %.16e, or "nan" / "inf" / "-inf".
std::string format_number(double v);

void write_csv(std::ostream& out, const CsvTable& table);
/// Throws DomainError on ragged rows or unparsable fields.
CsvTable read_csv(std::istream& in);

/// NaN-aware exact equality (used for round-trip checks).
bool same_values(const CsvTable& a, const CsvTable& b);

nlohmann::json number_json(double v);
double number_from_json(const nlohmann::json& j);
nlohmann::json array_json(const std::vector<double>& v);
std::vector<double> array_from_json(const nlohmann::json& j);

nlohmann::json mesh_json(const CornerMesh& mesh);
nlohmann::json report_json(const SolveReport& report, bool with_grids);
nlohmann::json comparison_json(const Comparison& c, bool with_grids);

/// Serialized text of a JSON document (two-space indent, trailing newline).
std::string dump_json(const nlohmann::json& j);

}  // namespace legcorner
