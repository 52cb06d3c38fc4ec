#include "confalg/checks.hpp"
#include "confalg/paper_cases.hpp"
#include "confalg/parse.hpp"
#include "confalg/presentation.hpp"
#include "confalg/solver.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace confalg;

namespace {

// Element of a single-block algebra from a matrix string.
ConfElem elem(const AlgPtr& a, const std::string& m) { return make_elem(a, parse_matrix(m)); }

Var var_of(const std::string& name) {
  const MPoly p = parse_poly(name);
  for (int v = 0; v < kNumVars; ++v)
    if (p == MPoly::var(Var(v))) return Var(v);
  throw std::invalid_argument("not a variable: " + name);
}

RunConfig config(const std::string& checks, int deg_bound, int solver_deg, int samples, std::uint64_t seed) {
  RunConfig c;
  c.checks = checks;
  c.deg_bound = deg_bound;
  c.solver_deg = solver_deg;
  c.samples = samples;
  c.seed = seed;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "confalg kernel bindings; structured results come back as JSON text";
  m.attr("__version__") = CONFALG_VERSION;

  py::register_exception<DescriptorError>(m, "DescriptorError", PyExc_ValueError);
  py::register_exception<UnknownCheck>(m, "UnknownCheck", PyExc_KeyError);

  m.def("poly", [](const std::string& s) { return parse_poly(s).to_string(); }, "Normal form of a polynomial");
  m.def("poly_mul", [](const std::string& a, const std::string& b) { return (parse_poly(a) * parse_poly(b)).to_string(); });
  m.def(
      "substitute",
      [](const std::string& p, const std::map<std::string, std::string>& bind) {
        Subst s;
        for (const auto& [v, e] : bind) s.bind(var_of(v), parse_poly(e));
        return substitute(parse_poly(p), s).to_string();
      },
      py::arg("p"), py::arg("bindings"));

  m.def(
      "lambda_product",
      [](const std::string& alg, const std::string& a, const std::string& b) {
        auto A = make_algebra(parse_algebra(alg));
        return to_string(lambda_product(elem(A, a), elem(A, b)).value);
      },
      py::arg("algebra"), py::arg("a"), py::arg("b"));
  m.def(
      "n_product",
      [](const std::string& alg, const std::string& a, const std::string& b, int n) {
        auto A = make_algebra(parse_algebra(alg));
        return to_string(n_product(elem(A, a), elem(A, b), n).value);
      },
      py::arg("algebra"), py::arg("a"), py::arg("b"), py::arg("n"));

  m.def(
      "cocycle_check",
      [](const std::string& c, int bound) { return cocycle_check(paper_cocycle(parse_case(c)).phi, bound).to_json().dump(); },
      py::arg("case"), py::arg("bound") = 3);
  m.def(
      "obstruction_check", [](const std::string& c, int bound) { return obstruction_check(parse_case(c), bound).to_json().dump(); },
      py::arg("case"), py::arg("bound") = 3);
  m.def(
      "coboundary_solve",
      [](const std::string& c, int deg_bound, int solver_deg) {
        return coboundary_solve(paper_cocycle(parse_case(c)).phi, deg_bound, solver_deg).cert.to_json().dump();
      },
      py::arg("case"), py::arg("deg_bound") = 4, py::arg("solver_deg") = 6);
  m.def("verify_relations", [](int n) { return verify_relations(n).to_json().dump(); }, py::arg("n"));
  m.def(
      "independence_check", [](int n, int s, int t) { return independence_check(n, s, t).to_json().dump(); },
      py::arg("n"), py::arg("s_max"), py::arg("t_max"));

  m.def("list_checks", [] {
    std::vector<std::tuple<std::string, std::string, std::string>> v;
    for (const auto& c : list_checks()) v.emplace_back(c.id, c.anchor, c.description);
    return v;
  });
  m.def(
      "run",
      [](const std::string& checks, int deg_bound, int solver_deg, int samples, std::uint64_t seed) {
        RunConfig c = config(checks, deg_bound, solver_deg, samples, seed);
        py::gil_scoped_release release;
        return run(c).to_json().dump();
      },
      py::arg("checks") = "*", py::arg("deg_bound") = 4, py::arg("solver_deg") = 6, py::arg("samples") = 200,
      py::arg("seed") = 0);
}
