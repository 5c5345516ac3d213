#pragma once

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace descent::cli {

enum ExitCode : int {
  kEffective = 0,
  kIncident = 1,
  kInputError = 2,
  kDescent = 3,
  kAlmost = 4,
  kNotAlmost = 5,
};

struct Row {
  std::string status;
  std::string subject;
  std::string detail;
};

/// Everything a command prints. Both renderings carry exactly these fields.
struct Report {
  std::string command;
  std::string input;
  std::string verdict;
  int exit_code = kEffective;
  std::optional<std::size_t> bound;
  bool bounded = false;  // the verdict covers objects up to the bound only
  std::vector<std::pair<std::string, std::string>> facts;
  std::vector<Row> rows;
  std::vector<std::string> witnesses;  // spec documents
  double seconds = 0;

  void fact(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }
};

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["input"] = r.input;
  j["verdict"] = r.verdict;
  j["exit_code"] = r.exit_code;
  j["bound"] = r.bound ? nlohmann::ordered_json(*r.bound) : nlohmann::ordered_json();
  j["bounded"] = r.bounded;
  j["facts"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.facts) j["facts"][k] = v;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) j["rows"].push_back({{"status", row.status}, {"subject", row.subject}, {"detail", row.detail}});
  j["witnesses"] = r.witnesses;
  j["seconds"] = r.seconds;
  return j;
}

inline std::string render_text(const Report& r) {
  std::ostringstream os;
  os << r.command << " " << r.input << "\n";
  os << "verdict: " << r.verdict << "\n";
  if (r.bound) os << "bound: " << *r.bound << (r.bounded ? " (verdict holds up to this bound)" : "") << "\n";
  for (const auto& [k, v] : r.facts) os << k << ": " << v << "\n";
  for (const auto& row : r.rows)
    os << "  [" << row.status << "] " << row.subject << (row.detail.empty() ? "" : " | " + row.detail) << "\n";
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    os << "--- witness " << i + 1 << "\n" << r.witnesses[i];
    if (!r.witnesses[i].empty() && r.witnesses[i].back() != '\n') os << "\n";
  }
  char t[32];
  std::snprintf(t, sizeof t, "%.3f", r.seconds);
  os << "exit code: " << r.exit_code << "\n";
  os << "time: " << t << "s\n";
  return os.str();
}

inline std::string render(const Report& r, const std::string& format) {
  if (format == "machine") return to_json(r).dump(2) + "\n";
  return render_text(r);
}

}  // namespace descent::cli
