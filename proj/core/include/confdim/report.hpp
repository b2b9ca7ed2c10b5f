#ifndef CONFDIM_REPORT_HPP
#define CONFDIM_REPORT_HPP

#include <string>
#include <vector>

#include "confdim/rational.hpp"

#include "json.hpp"

namespace confdim {

/// Outcome of one verification pass. `violations` lists reproducible
/// locations (worst first); `stats` carries named scalar findings.
struct CheckReport {
  std::string name;
  bool passed = true;
  std::vector<std::string> violations;
  std::vector<std::pair<std::string, std::string>> stats;

  void add_stat(const std::string& key, const std::string& value);
  void fail(const std::string& where);
  nlohmann::json to_json() const;
};

/// CSV with a fixed header; rows already serialized. Deterministic,
/// no timestamps.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows);

void write_json(const std::string& path, const nlohmann::json& doc);

} // namespace confdim

#endif
