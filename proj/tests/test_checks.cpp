#include "confalg/checks.hpp"
#include "doctest.h"

#include <algorithm>

using namespace confalg;

namespace {

bool has(const std::string& id) {
  const auto& v = list_checks();
  return std::any_of(v.begin(), v.end(), [&](const CheckInfo& c) { return c.id == id; });
}

}  // namespace

TEST_CASE("registry") {
  const auto& v = list_checks();
  CHECK(v.size() >= 25);
  CHECK(std::is_sorted(v.begin(), v.end(), [](const CheckInfo& a, const CheckInfo& b) { return a.id < b.id; }));
  CHECK(has("presentation.relations.n2"));
  CHECK(has("hochschild.cocycle.rect"));
  for (const auto& c : v) {
    CHECK_FALSE(c.anchor.empty());
    CHECK_FALSE(c.description.empty());
  }
}

TEST_CASE("selection") {
  CHECK(select_checks("presentation.*").size() == 6);
  CHECK(select_checks("hochschild.obstruction.ex41").size() == 1);
  CHECK_THROWS_AS(select_checks("nosuch.check"), UnknownCheck);
  CHECK_THROWS_AS(run_check("nosuch.check", {}), UnknownCheck);
}

TEST_CASE("single checks") {
  auto c = run_check("hochschild.obstruction.ex41", {});
  CHECK(c.passed());
  CHECK(c.check == "hochschild.obstruction.ex41");
  CHECK(c.params["op"] == "obstruction_check");
  CHECK(c.witness["summary"] == "residue 1 at z=−λ");
}

TEST_CASE("reports are deterministic") {
  RunConfig cfg;
  cfg.checks = "axioms.algebra.cend?";
  cfg.samples = 20;
  cfg.seed = 7;
  auto a = run(cfg).to_json(), b = run(cfg).to_json();
  a.erase("metadata");
  b.erase("metadata");
  CHECK(a.dump() == b.dump());
  CHECK(a["summary"]["pass"] == 2);

  cfg.seed = 8;
  auto c = run(cfg);
  CHECK(c.ok());
  CHECK(c.to_text().find("2 checks: 2 pass") != std::string::npos);
}

TEST_CASE("bad config") {
  RunConfig cfg;
  cfg.deg_bound = 0;
  CHECK_THROWS(run(cfg));
}
