#pragma once

// Command implementations behind the legcorner executable. Every command
// reads one JSON config document (see README) and writes its outputs into
// the output directory; nothing depends on time or randomness.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "legcorner/io.hpp"

namespace legcorner::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string config_path;         // empty: built-in defaults only
  std::vector<std::string> sets;   // dotted.key=value overrides
  std::string out_dir = ".";
  std::string format = "csv";      // csv | json, for curves and surfaces
  bool seed_free = false;
};

/// Built-in defaults merged with the config file and the overrides.
nlohmann::json load_config(const Options& options);

/// Applies "a.b.c=value"; value is parsed as JSON when possible, else kept
/// as a string.
void apply_override(nlohmann::json& config, const std::string& assignment);

CsvTable series_table(const nlohmann::json& config);
nlohmann::json series_document(const nlohmann::json& config);
CsvTable surface_table(const nlohmann::json& config);
nlohmann::json surface_document(const nlohmann::json& config);
nlohmann::json solve_document(const nlohmann::json& config, bool with_grids);
nlohmann::json sweep_document(const nlohmann::json& config);

/// Runs one command; returns the process exit code. Diagnostics go to `err`,
/// a short summary to `out`.
int run(const Options& options, std::ostream& out, std::ostream& err);

}  // namespace legcorner::cli
