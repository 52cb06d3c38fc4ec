#pragma once

#include "confalg/certificate.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace confalg {

struct RunConfig {
  std::string checks = "*";  // fnmatch glob over check ids
  int deg_bound = 4;
  int solver_deg = 6;
  int samples = 200;
  std::uint64_t seed = 0;
};

struct CheckInfo {
  std::string id;
  std::string anchor;
  std::string description;
};

// Sorted by id.
const std::vector<CheckInfo>& list_checks();

struct UnknownCheck : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Ids matched by the glob; throws UnknownCheck when nothing matches.
std::vector<std::string> select_checks(const std::string& glob);

// Exceptions inside a check become an error verdict.
Certificate run_check(const std::string& id, const RunConfig& cfg);

struct Report {
  RunConfig config;
  std::vector<Certificate> certificates;
  std::string timestamp;

  int count(Verdict v) const;
  bool ok() const;  // no fail and no error
  // "metadata" holds the timestamp and is the only run-dependent field.
  nlohmann::json to_json() const;
  std::string to_text() const;
};

Report run(const RunConfig& cfg);

}  // namespace confalg
