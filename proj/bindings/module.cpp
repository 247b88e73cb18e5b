#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "webgeom/report.hpp"
#include "webgeom/solver.hpp"

namespace py = pybind11;
using namespace webgeom;

namespace {

RunOptions make_options(int points, double tol, uint64_t seed,
                        const std::vector<std::string>& t_samples, int degree,
                        const std::string& ttilde, bool timing) {
  RunOptions opt;
  opt.spec_path = "<inline>";
  opt.points = points;
  opt.tol = tol;
  opt.seed = seed;
  if (!t_samples.empty()) {
    opt.t_samples.clear();
    for (const auto& s : t_samples) opt.t_samples.push_back(rational_from_string(s));
  }
  opt.degree = degree;
  opt.ttilde = ttilde;
  opt.timing = timing;
  return opt;
}

std::string run_json(const std::string& command, const std::string& spec_text, int points,
                     double tol, uint64_t seed, const std::vector<std::string>& t_samples,
                     int degree, const std::string& ttilde, bool timing) {
  RunOptions opt = make_options(points, tol, seed, t_samples, degree, ttilde, timing);
  return run_command(command, parse_problem_text(spec_text), opt).report.dump();
}

std::string solve_json(const std::string& theta, int degree) {
  auto p = poly_from_expr(parse(theta, {"x1", "x2", "y1", "y2"}));
  if (!p) throw std::invalid_argument("theta must be polynomial");
  JetSolution sol = jet_solve(*p, degree);
  return solution_json(sol, certify(sol)).dump();
}

std::string certify_json(const std::string& solution_text) {
  JetSolution sol = solution_from_json(nlohmann::json::parse(solution_text));
  return certificate_json(certify(sol)).dump();
}

std::string simplify_str(const std::string& expr_text) {
  return parse(expr_text).simplified().str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "web geometry and heavenly-equation checks (JSON string interface)";

  m.def("run_json", &run_json, py::arg("command"), py::arg("spec"), py::arg("points") = 10,
        py::arg("tol") = 1e-9, py::arg("seed") = 12345,
        py::arg("t_samples") = std::vector<std::string>{}, py::arg("degree") = 6,
        py::arg("ttilde") = std::string(), py::arg("timing") = false,
        "Run a subcommand on a problem document (JSON text); returns the report as JSON text.");
  m.def("solve_json", &solve_json, py::arg("theta"), py::arg("degree") = 6,
        "Degree-by-degree heavenly solve for a planar potential; returns the solution document.");
  m.def("certify_json", &certify_json, py::arg("solution"),
        "Re-certify a solution document (JSON text); returns the certificate.");
  m.def("simplify", &simplify_str, py::arg("expr"), "Parse and simplify an expression.");
}
