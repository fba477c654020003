#include "g2cert/report.hpp"

#include "g2cert/version.hpp"

#include <sstream>

namespace g2cert {

std::string format_double(double v) { return nlohmann::json(v).dump(); }

void Report::add(CheckRecord r) { records.push_back(std::move(r)); }

bool Report::all_pass() const {
  for (const auto& r : records)
    if (r.applicable && !r.pass) return false;
  return true;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["command"] = command;
  j["meta"] = meta;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json rec;
    rec["check"] = r.check;
    rec["subject"] = r.subject;
    if (r.residual) rec["residual"] = *r.residual;
    if (r.tolerance) rec["tolerance"] = *r.tolerance;
    if (r.value) rec["value"] = *r.value;
    rec["pass"] = r.pass;
    if (!r.applicable) rec["applicable"] = false;
    if (!r.anchor.empty()) rec["anchor"] = r.anchor;
    if (!r.note.empty()) rec["note"] = r.note;
    arr.push_back(std::move(rec));
  }
  j["records"] = std::move(arr);
  j["pass"] = all_pass();
  return j;
}

Report Report::from_json(const nlohmann::ordered_json& j) {
  Report rep;
  rep.command = j.at("command").get<std::string>();
  rep.meta = j.value("meta", nlohmann::ordered_json::object());
  for (const auto& rec : j.at("records")) {
    CheckRecord r;
    r.check = rec.at("check").get<std::string>();
    r.subject = rec.at("subject").get<std::string>();
    if (rec.contains("residual")) r.residual = rec.at("residual").get<double>();
    if (rec.contains("tolerance")) r.tolerance = rec.at("tolerance").get<double>();
    if (rec.contains("value")) r.value = rec.at("value").get<std::string>();
    r.pass = rec.at("pass").get<bool>();
    r.applicable = rec.value("applicable", true);
    r.anchor = rec.value("anchor", std::string());
    r.note = rec.value("note", std::string());
    rep.records.push_back(std::move(r));
  }
  return rep;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << kToolName << ' ' << kVersion << ' ' << command << '\n';
  for (auto it = meta.begin(); it != meta.end(); ++it)
    os << "  " << it.key() << ": "
       << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << '\n';
  for (const auto& r : records) {
    os << (r.applicable ? (r.pass ? "[PASS] " : "[FAIL] ") : "[n/a ] ");
    os << r.check;
    for (size_t pad = r.check.size(); pad < 18; ++pad) os << ' ';
    os << ' ' << r.subject;
    if (r.residual) os << "  residual=" << format_double(*r.residual);
    if (r.tolerance) os << " tol=" << format_double(*r.tolerance);
    if (r.value) os << "  value=" << *r.value;
    if (!r.note.empty()) os << "  (" << r.note << ')';
    if (!r.anchor.empty()) os << "  [" << r.anchor << ']';
    os << '\n';
  }
  int applicable = 0;
  for (const auto& r : records)
    if (r.applicable) ++applicable;
  os << "result: " << (all_pass() ? "PASS" : "FAIL") << " (" << applicable << " checks)\n";
  return os.str();
}

} // namespace g2cert
