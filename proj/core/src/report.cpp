#include "confdim/report.hpp"

#include <fstream>
#include <stdexcept>

namespace confdim {

void CheckReport::add_stat(const std::string& key, const std::string& value) {
  stats.emplace_back(key, value);
}

void CheckReport::fail(const std::string& where) {
  passed = false;
  violations.push_back(where);
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json doc;
  doc["check"] = name;
  doc["passed"] = passed;
  doc["violations"] = violations;
  nlohmann::json st = nlohmann::json::object();
  for (const auto& [k, v] : stats) st[k] = v;
  doc["stats"] = std::move(st);
  return doc;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << header << "\n";
  for (const auto& r : rows) out << r << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_json(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace confdim
