#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace g2cert {

/* Shortest round-trip decimal rendering; text and JSON output share it so the
 * two formats carry identical numeric payloads. */
std::string format_double(double v);

struct CheckRecord {
  std::string check;
  std::string subject;
  std::optional<double> residual;
  std::optional<double> tolerance;
  std::optional<std::string> value; // integer or structured results
  bool pass = true;
  bool applicable = true; // false = "n/a" row, excluded from the exit code
  std::string anchor;
  std::string note;
};

struct Report {
  std::string command;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  std::vector<CheckRecord> records;

  void add(CheckRecord r);
  bool all_pass() const; // over applicable records only

  nlohmann::ordered_json to_json() const;
  static Report from_json(const nlohmann::ordered_json& j);
  std::string to_text() const;
};

} // namespace g2cert
