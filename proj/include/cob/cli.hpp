#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cob::cli {

enum class Format { Json, Csv, Text };

struct RunConfig {
  std::string command;
  int n = 3;
  /// Schatten exponent as typed ("1.5", "inf"); empty selects the suite default.
  std::string p;
  std::string group = "S3";
  std::uint64_t seed = 0;
  /// Assertion tolerance. SDPs are solved to tol / 100, clamped to [1e-10, 1e-7].
  double tol = 1e-4;
  int trials = 20;
  Format format = Format::Json;
  std::optional<std::string> out;
  /// Optional symbol matrix (shared matrix text/JSON format) for Schur suites.
  std::optional<std::string> symbol_file;
  /// Optional group file (catalog text format) replacing --group.
  std::optional<std::string> group_file;
};

/// One checked claim. `anchor` names the claim; `inputs` is hashed into
/// `inputs_digest` (FNV-1a over the canonical JSON dump).
struct Record {
  std::string operation;
  std::string anchor;
  nlohmann::json inputs;
  nlohmann::json values;
  nlohmann::json tolerances;
  bool pass = false;
  double wall_time_s = 0.0;
};

const std::vector<std::string>& commands();
Format parse_format(const std::string& s);
std::string format_name(Format f);

/// Empty when the config is valid, else the reason.
std::string config_error(const RunConfig& config);

/// Runs the selected suite. Throws cob::DomainError on an invalid config.
std::vector<Record> run_suite(const RunConfig& config);

std::string fnv1a_hex(const std::string& bytes);
nlohmann::json record_json(const Record& r);
/// Full report; `with_timing = false` drops the wall-time fields.
nlohmann::json report_json(const RunConfig& config, const std::vector<Record>& records, bool with_timing = true);
void render(std::ostream& os, const RunConfig& config, const std::vector<Record>& records);

/// Validates, runs, writes the report to `out` (or the --out path) and
/// returns 0 when every record passes, 1 on an assertion failure (failing
/// records are echoed to `err`) and 2 on an invalid config.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cob::cli
