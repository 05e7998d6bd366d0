// report.hpp -- check records and deterministic report serialization
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qms {

inline constexpr const char* tool_version = "0.1.0";

// One verified statement. `detail` carries the mathematical statement that
// was checked, `residual` what was measured, `tolerance` what was allowed.
struct Check {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct Report {
  std::string command;
  std::string input_file;    // basename only, to keep reports portable
  std::string input_digest;  // fnv1a64 of the input bytes
  long long dim = 0;
  std::vector<Check> checks;
  nlohmann::json payload;  // command-specific results

  bool pass() const;
  void add(const Check& check);
};

nlohmann::json report_to_json(const Report& report);

// Deterministic serialization: object keys sorted, floating-point numbers
// printed with 17 significant digits, newline-terminated. Byte-identical
// across runs for equal inputs.
std::string canonical_dump(const nlohmann::json& j);

std::string markdown_dump(const Report& report);

}  // namespace qms
