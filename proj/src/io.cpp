#include "legcorner/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "legcorner/errors.hpp"

namespace legcorner {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s) {
  if (s == "nan") return kNaN;
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw DomainError("csv: cannot parse '" + s + "'");
  return v;
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

const char* tag_name(NodeTag t) {
  switch (t) {
    case NodeTag::interior:
      return "interior";
    case NodeTag::boundary:
      return "boundary";
    case NodeTag::exterior:
      return "exterior";
  }
  return "exterior";
}

nlohmann::json grid_json(const std::vector<double>& v) { return array_json(v); }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (std::size_t k = 0; k < table.header.size(); ++k) {
    if (table.header[k].find(',') != std::string::npos) throw DomainError("csv: comma in column name");
    out << (k ? "," : "") << table.header[k];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw DomainError("csv: row width differs from header");
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_number(row[k]);
    out << '\n';
  }
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("csv: missing header");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != t.header.size()) throw DomainError("csv: ragged row");
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_number(f));
    t.rows.push_back(std::move(row));
  }
  return t;
}

bool same_values(const CsvTable& a, const CsvTable& b) {
  if (a.header != b.header || a.rows.size() != b.rows.size()) return false;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].size() != b.rows[r].size()) return false;
    for (std::size_t k = 0; k < a.rows[r].size(); ++k) {
      if (!same(a.rows[r][k], b.rows[r][k])) return false;
    }
  }
  return true;
}

nlohmann::json number_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_null()) return kNaN;
  return j.get<double>();
}

nlohmann::json array_json(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(number_json(x));
  return a;
}

std::vector<double> array_from_json(const nlohmann::json& j) {
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(number_from_json(x));
  return v;
}

nlohmann::json mesh_json(const CornerMesh& mesh) {
  nlohmann::json m;
  m["x_nodes"] = array_json(mesh.x_nodes);
  m["y_nodes"] = array_json(mesh.y_nodes);
  nlohmann::json mask = nlohmann::json::array();
  for (NodeTag t : mesh.mask) mask.push_back(tag_name(t));
  m["mask"] = std::move(mask);
  m["layout"] = "row-major, index j * nx + i";
  return m;
}

nlohmann::json report_json(const SolveReport& r, bool with_grids) {
  nlohmann::json j;
  j["iterations"] = r.iterations;
  j["inner_sweeps"] = r.inner_sweeps;
  j["final_residual"] = number_json(r.final_residual);
  j["picard_increment"] = number_json(r.picard_increment);
  j["max_rel_error"] = number_json(r.max_rel_error);
  j["near_corner_max_rel_error"] = number_json(r.near_corner_max_rel_error);
  j["rho_near"] = number_json(r.rho_near);
  j["fitted_gradient_exponent"] = number_json(r.fitted_gradient_exponent);
  j["weight_fallbacks"] = r.weight_fallbacks;
  if (with_grids) {
    j["u_grid"] = grid_json(r.u_grid);
    j["rel_error_grid"] = grid_json(r.rel_error_grid);
  }
  return j;
}

nlohmann::json comparison_json(const Comparison& c, bool with_grids) {
  nlohmann::json j;
  j["near_corner_error_ratio"] = number_json(c.near_corner_error_ratio);
  j["adapted"] = report_json(c.adapted, with_grids);
  j["naive"] = report_json(c.naive, with_grids);
  j["adapted_fallbacks"] = c.adapted_fallbacks;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : c.sensitivity) {
    rows.push_back({{"cells", row.cells},
                    {"rho_near", number_json(row.rho_near)},
                    {"naive", number_json(row.naive)},
                    {"adapted", number_json(row.adapted)},
                    {"ratio", number_json(row.ratio)}});
  }
  j["rho_near_sensitivity"] = std::move(rows);
  return j;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace legcorner
