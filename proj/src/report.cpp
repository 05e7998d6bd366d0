#include "qms/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qms {

bool Report::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

void Report::add(const Check& check) { checks.push_back(check); }

nlohmann::json report_to_json(const Report& report) {
  nlohmann::json j;
  j["tool"] = "qms";
  j["version"] = tool_version;
  j["command"] = report.command;
  j["input"] = {{"file", report.input_file}, {"digest", report.input_digest}};
  j["dim"] = report.dim;
  j["pass"] = report.pass();
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  }
  j["checks"] = checks;
  j["payload"] = report.payload;
  return j;
}

namespace {

void dump_value(const nlohmann::json& j, std::string& out) {
  using value_t = nlohmann::json::value_t;
  switch (j.type()) {
    case value_t::null:
      out += "null";
      break;
    case value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case value_t::number_integer: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%lld",
                    static_cast<long long>(j.get<std::int64_t>()));
      out += buf;
      break;
    }
    case value_t::number_unsigned: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%llu",
                    static_cast<unsigned long long>(j.get<std::uint64_t>()));
      out += buf;
      break;
    }
    case value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        // NaN and infinities are not valid JSON; reports never need them.
        out += "null";
        break;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    case value_t::string:
      // Reuse the library's escaping for the string payload alone.
      out += nlohmann::json(j.get<std::string>()).dump();
      break;
    case value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        dump_value(item, out);
      }
      out += ']';
      break;
    }
    case value_t::object: {
      // nlohmann::json with the default object type keeps keys sorted.
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(it.key()).dump();
        out += ':';
        dump_value(it.value(), out);
      }
      out += '}';
      break;
    }
    default:
      out += "null";
      break;
  }
}

}  // namespace

std::string canonical_dump(const nlohmann::json& j) {
  std::string out;
  dump_value(j, out);
  out += '\n';
  return out;
}

std::string markdown_dump(const Report& report) {
  std::ostringstream os;
  os << "# qms " << report.command << "\n\n";
  os << "- input: `" << report.input_file << "` (" << report.input_digest
     << ")\n";
  os << "- dim: " << report.dim << "\n";
  os << "- result: " << (report.pass() ? "PASS" : "FAIL") << "\n\n";
  os << "| check | result | residual | tolerance |\n";
  os << "|---|---|---|---|\n";
  char buf[64];
  for (const auto& c : report.checks) {
    os << "| " << c.name << " | " << (c.pass ? "pass" : "FAIL") << " | ";
    std::snprintf(buf, sizeof buf, "%.3e", c.residual);
    os << buf << " | ";
    std::snprintf(buf, sizeof buf, "%.3e", c.tolerance);
    os << buf << " |\n";
  }
  os << "\n";
  for (const auto& c : report.checks) {
    if (!c.detail.empty()) os << "- **" << c.name << "**: " << c.detail << "\n";
  }
  return os.str();
}

}  // namespace qms
