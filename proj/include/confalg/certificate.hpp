#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace confalg {

enum class Verdict { Pass, Fail, NoSolution, Error };

const char* verdict_name(Verdict v);

// How much a verdict proves.
//   proof:      a symbolic argument valid at every degree
//   exhaustive: every generator tuple up to the stated bound
//   sampled:    random samples
//   bounded:    a linear-algebra search up to the stated bound
enum class Evidence { Proof, Exhaustive, Sampled, Bounded };

const char* evidence_name(Evidence e);

struct Certificate {
  std::string check;
  std::string anchor;
  nlohmann::json params = nlohmann::json::object();
  Verdict verdict = Verdict::Pass;
  Evidence evidence = Evidence::Exhaustive;
  std::optional<int> bound;
  nlohmann::json witness;  // null when absent

  bool passed() const { return verdict == Verdict::Pass; }
  nlohmann::json to_json() const;
};

}  // namespace confalg
