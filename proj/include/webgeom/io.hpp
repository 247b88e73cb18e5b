#pragma once

#include <string>
#include <variant>

#include "json.hpp"
#include "webgeom/heavenly.hpp"
#include "webgeom/ode.hpp"
#include "webgeom/solver.hpp"
#include "webgeom/web.hpp"

namespace webgeom {

using Problem = std::variant<WebSpec, HeavenlySpec, ThetaSpec, OdeSpec>;

// Parse and validate a problem document: an object with "kind" in
// {web, heavenly, theta, ode} plus the fields of the corresponding spec.
// Validation failures throw std::invalid_argument naming the offending
// field (expression errors keep the parser's offset message).
Problem parse_problem(const nlohmann::json& doc);
Problem parse_problem_text(const std::string& text);
Problem load_problem(const std::string& path);

// Jet solutions serialize as {"D": int, "theta": {"(a,b,c,d)": "p/q"},
// "certificate": {...}} where (a,b,c,d) are the exponents of x1,x2,y1,y2.
nlohmann::ordered_json certificate_json(const Certificate& cert);
nlohmann::ordered_json solution_json(const JetSolution& sol, const Certificate& cert);

// Rebuilds the solution (residual recomputed; level logs are not persisted).
JetSolution solution_from_json(const nlohmann::json& doc);
JetSolution load_solution(const std::string& path);

}  // namespace webgeom
