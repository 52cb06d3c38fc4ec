#include "confalg/checks.hpp"
#include "confalg/presentation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace confalg;

namespace {

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot write " << out << "\n";
    return 2;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier for associative conformal algebras and their Hochschild cocycles"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "text", out, positional;

  auto* list = app.add_subcommand("list", "List check ids with anchors");
  list->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* run_cmd = app.add_subcommand("run", "Run checks and print a report");
  run_cmd->add_option("pattern", positional, "Check id glob (same as --checks)");
  run_cmd->add_option("--checks", cfg.checks, "Glob over check ids");
  run_cmd->add_option("--deg-bound", cfg.deg_bound, "Generator x-degree bound D")->check(CLI::PositiveNumber);
  run_cmd->add_option("--solver-deg", cfg.solver_deg, "Degree bound for coboundary unknowns")->check(CLI::PositiveNumber);
  run_cmd->add_option("--samples", cfg.samples, "Random sample count")->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", cfg.seed, "Random seed");
  run_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  run_cmd->add_option("--out", out, "Write the report here instead of stdout");

  int n = 2, smax = 3, tmax = 3;
  bool as_json = false;
  auto* pres = app.add_subcommand("presentation", "Relations, derived generators and reduced-word independence for Cend_{n,Q}");
  pres->add_option("--n", n)->check(CLI::Range(2, 6));
  pres->add_option("--smax", smax)->check(CLI::PositiveNumber);
  pres->add_option("--tmax", tmax)->check(CLI::PositiveNumber);
  pres->add_flag("--json", as_json);
  pres->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& c : list_checks()) j.push_back({{"id", c.id}, {"anchor", c.anchor}, {"description", c.description}});
        return emit(j.dump(2) + "\n", out);
      }
      std::string s;
      for (const auto& c : list_checks()) s += c.id + "\t" + c.anchor + "\t" + c.description + "\n";
      return emit(s, out);
    }

    if (*run_cmd) {
      if (!positional.empty()) cfg.checks = positional;
      Report rep = run(cfg);
      int rc = emit(format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_text(), out);
      if (rc) return rc;
      return rep.ok() ? 0 : 1;
    }

    if (*pres) {
      std::vector<Certificate> certs = {verify_relations(n), verify_derived_generators(n), independence_check(n, smax, tmax)};
      bool ok = true;
      nlohmann::json j = nlohmann::json::array();
      std::string text;
      for (const auto& c : certs) {
        ok = ok && c.passed();
        j.push_back(c.to_json());
        text += std::string(verdict_name(c.verdict)) + "  " + c.check + "  " + c.witness.dump() + "\n";
      }
      int rc = emit(as_json ? j.dump(2) + "\n" : text, out);
      if (rc) return rc;
      return ok ? 0 : 1;
    }
  } catch (const UnknownCheck& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
