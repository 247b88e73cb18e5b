#include "webgeom/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace webgeom {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw std::invalid_argument("field \"" + field + "\": " + why);
}

size_t read_m(const json& doc, size_t min_m) {
  if (!doc.contains("m") || !doc["m"].is_number_integer())
    fail("m", "expected an integer");
  long long m = doc["m"].get<long long>();
  if (m < static_cast<long long>(min_m))
    fail("m", "must be at least " + std::to_string(min_m));
  return static_cast<size_t>(m);
}

Expr parse_field(const std::string& field, const json& value,
                 const std::vector<std::string>& coords) {
  if (!value.is_string()) fail(field, "expected an expression string");
  try {
    return parse(value.get<std::string>(), coords);
  } catch (const ParseError& e) {
    fail(field, e.what());
  }
}

std::vector<Expr> read_expr_list(const json& doc, const std::string& field, size_t m,
                                 const std::vector<std::string>& coords) {
  if (!doc.contains(field) || !doc[field].is_array()) fail(field, "expected an array");
  const json& arr = doc[field];
  if (arr.size() != m)
    fail(field, "expected " + std::to_string(m) + " expressions for m = " + std::to_string(m) +
                    ", got " + std::to_string(arr.size()));
  std::vector<Expr> out;
  for (size_t i = 0; i < arr.size(); ++i)
    out.push_back(parse_field(field + "[" + std::to_string(i) + "]", arr[i], coords));
  return out;
}

Rational read_rational(const std::string& field, const json& value) {
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (value.is_string()) {
    try {
      return rational_from_string(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(field, e.what());
    }
  }
  fail(field, "expected an integer or a \"p/q\" string");
}

WebSpec read_web(const json& doc) {
  WebSpec spec;
  spec.m = read_m(doc, 1);
  std::vector<std::string> coords = CoordSystem::split(spec.m).all();
  spec.w = read_expr_list(doc, "w", spec.m, coords);
  if (doc.contains("samples")) {
    if (!doc["samples"].is_array()) fail("samples", "expected an array of points");
    for (size_t i = 0; i < doc["samples"].size(); ++i) {
      const json& row = doc["samples"][i];
      std::string field = "samples[" + std::to_string(i) + "]";
      if (!row.is_array() || row.size() != coords.size())
        fail(field, "expected " + std::to_string(coords.size()) + " coordinates");
      Point p;
      for (size_t k = 0; k < coords.size(); ++k)
        p[coords[k]] = read_rational(field + "[" + std::to_string(k) + "]", row[k]);
      spec.samples.push_back(p);
    }
  }
  return spec;
}

HeavenlySpec read_heavenly(const json& doc) {
  HeavenlySpec spec;
  spec.m = read_m(doc, 2);
  spec.R = read_expr_list(doc, "R", spec.m, CoordSystem::split(spec.m).all());
  return spec;
}

// Pair keys are 1-based digit strings "ij" with i < j, as in "12".
std::pair<size_t, size_t> read_pair_key(const std::string& field, const std::string& key,
                                        size_t m) {
  auto bad = [&] {
    fail(field, "bad pair key \"" + key + "\" (expected digits \"ij\" with 1 <= i < j <= " +
                    std::to_string(m) + ")");
  };
  if (key.size() != 2 || !std::isdigit(key[0]) || !std::isdigit(key[1])) bad();
  size_t a = static_cast<size_t>(key[0] - '0');
  size_t b = static_cast<size_t>(key[1] - '0');
  if (a < 1 || a >= b || b > m) bad();
  return {a - 1, b - 1};
}

ThetaSpec read_theta(const json& doc) {
  ThetaSpec spec;
  spec.m = read_m(doc, 2);
  std::vector<std::string> coords = CoordSystem::split(spec.m).all();
  if (!doc.contains("theta") || !doc["theta"].is_object())
    fail("theta", "expected an object keyed by index pairs");
  for (const auto& [key, value] : doc["theta"].items()) {
    auto ij = read_pair_key("theta", key, spec.m);
    spec.theta[ij] = parse_field("theta[\"" + key + "\"]", value, coords);
  }
  if (doc.contains("f")) {
    if (spec.m == 2) fail("f", "gauge forms are not defined for m = 2");
    if (!doc["f"].is_object()) fail("f", "expected an object keyed by index pairs");
    for (const auto& [key, terms] : doc["f"].items()) {
      auto ij = read_pair_key("f", key, spec.m);
      std::string field = "f[\"" + key + "\"]";
      if (!terms.is_object()) fail(field, "expected an object keyed by multi-indices");
      ExprForm form;
      for (const auto& [idx_key, coeff] : terms.items()) {
        if (idx_key.size() != spec.m - 3)
          fail(field, "multi-index \"" + idx_key + "\" must list " + std::to_string(spec.m - 3) +
                          " of the first " + std::to_string(spec.m) + " differentials");
        std::vector<int> indices;
        int prev = 0;
        for (char c : idx_key) {
          if (!std::isdigit(c) || c - '0' < 1 || c - '0' > static_cast<int>(spec.m) ||
              c - '0' <= prev)
            fail(field, "multi-index \"" + idx_key + "\" must be strictly increasing digits in 1.." +
                            std::to_string(spec.m));
          prev = c - '0';
          indices.push_back(prev - 1);
        }
        Expr e = parse_field(field + "[\"" + idx_key + "\"]", coeff, coords);
        form = form + ExprForm::term(e, indices);
      }
      spec.f[ij] = form;
    }
  }
  return spec;
}

OdeSpec read_ode(const json& doc) {
  OdeSpec spec;
  spec.m = read_m(doc, 1);
  spec.F = read_expr_list(doc, "F", spec.m, spec.jet_vars());
  return spec;
}

}  // namespace

Problem parse_problem(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("spec: expected a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw std::invalid_argument(
        "spec: missing \"kind\" (expected \"web\", \"heavenly\", \"theta\", or \"ode\")");
  std::string kind = doc["kind"].get<std::string>();
  if (kind == "web") return read_web(doc);
  if (kind == "heavenly") return read_heavenly(doc);
  if (kind == "theta") return read_theta(doc);
  if (kind == "ode") return read_ode(doc);
  throw std::invalid_argument("spec: unknown kind \"" + kind + "\"");
}

Problem parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("spec: ") + e.what());
  }
  return parse_problem(doc);
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str());
}

nlohmann::ordered_json certificate_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["D"] = cert.D;
  j["residual"] = {{"pass", cert.clause_a},
                   {"exact_zero", cert.residual_exact_zero},
                   {"lowest_degree", cert.residual_lowest_degree},
                   {"witness", cert.witness}};
  j["first_order"] = {{"pass", cert.clause_b},
                      {"exact_zero", cert.eq1_exact_zero},
                      {"lowest_degree", cert.eq1_lowest_degree}};
  j["commutators"] = {{"pass", cert.clause_c},
                      {"lowest_degree", cert.lax_lowest_degree},
                      {"truncated_max_abs", cert.lax_truncated_max_abs}};
  j["trace"] = {{"pass", cert.clause_d}};
  j["frames"] = {{"pass", cert.clause_e},
                 {"applicable", cert.clause_e_applicable},
                 {"torsion_max_abs", cert.frames_torsion_max_abs}};
  j["all_passed"] = cert.all_passed();
  return j;
}

nlohmann::ordered_json solution_json(const JetSolution& sol, const Certificate& cert) {
  nlohmann::ordered_json j;
  j["D"] = sol.D;
  nlohmann::ordered_json theta = nlohmann::ordered_json::object();
  static const std::vector<std::string> vars{"x1", "x2", "y1", "y2"};
  for (const auto& [mono, coeff] : sol.theta.terms()) {
    std::string key = "(";
    for (size_t k = 0; k < vars.size(); ++k) {
      auto it = mono.find(vars[k]);
      key += std::to_string(it == mono.end() ? 0 : it->second);
      key += k + 1 < vars.size() ? "," : ")";
    }
    theta[key] = to_string(coeff);
  }
  j["theta"] = theta;
  j["certificate"] = certificate_json(cert);
  return j;
}

JetSolution solution_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("D") || !doc["D"].is_number_integer())
    throw std::invalid_argument("solution: missing integer \"D\"");
  if (!doc.contains("theta") || !doc["theta"].is_object())
    throw std::invalid_argument("solution: missing \"theta\" object");
  JetSolution sol;
  sol.D = doc["D"].get<int>();
  static const std::vector<std::string> vars{"x1", "x2", "y1", "y2"};
  for (const auto& [key, value] : doc["theta"].items()) {
    int e[4];
    char end = 0;
    if (std::sscanf(key.c_str(), "(%d,%d,%d,%d%c", &e[0], &e[1], &e[2], &e[3], &end) != 5 ||
        end != ')' || e[0] < 0 || e[1] < 0 || e[2] < 0 || e[3] < 0)
      fail("theta", "bad exponent key \"" + key + "\" (expected \"(a,b,c,d)\")");
    Monomial mono;
    for (size_t k = 0; k < 4; ++k)
      if (e[k]) mono[vars[k]] = e[k];
    sol.theta.set_coefficient(mono, read_rational("theta[\"" + key + "\"]", value));
  }
  sol.seed = sol.theta.truncated(3);
  sol.residual = heavenly_residual_poly(sol.theta);
  return sol;
}

JetSolution load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("solution: ") + e.what());
  }
  return solution_from_json(doc);
}

}  // namespace webgeom
