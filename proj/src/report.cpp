#include "webgeom/report.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "webgeom/biham.hpp"
#include "webgeom/sampling.hpp"

namespace webgeom {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::ordered_json;

ordered_json inputs_echo(const std::string& command, size_t m, const RunOptions& opt) {
  ordered_json j;
  j["command"] = command;
  ordered_json in;
  in["spec"] = opt.spec_path;
  in["m"] = m;
  in["points"] = opt.points;
  in["tol"] = opt.tol;
  in["seed"] = opt.seed;
  j["inputs"] = in;
  return j;
}

void echo_t_samples(ordered_json& j, const RunOptions& opt) {
  auto arr = ordered_json::array();
  for (const Rational& t : opt.t_samples) arr.push_back(to_string(t));
  j["inputs"]["t_samples"] = arr;
}

ordered_json point_json(const Point& p) {
  ordered_json j;
  for (const auto& [var, value] : p) j[var] = to_string(std::get<Rational>(value));
  return j;
}

RunResult finalize(ordered_json&& j, bool passed, const RunOptions& opt, Clock::time_point start) {
  j["passed"] = passed;
  if (opt.timing)
    j["timing"] = {{"seconds", std::chrono::duration<double>(Clock::now() - start).count()}};
  return {std::move(j), passed ? 0 : 1};
}

double max_abs_at(const Expr& e, const std::vector<Point>& pts) {
  double mx = 0.0;
  for (const Point& p : pts) mx = std::max(mx, std::fabs(e.eval_double(p)));
  return mx;
}

Point unit_point(const std::vector<std::string>& vars) {
  Point p;
  for (const auto& v : vars) p[v] = Rational(1);
  return p;
}

std::vector<std::string> matrix_strings_row(const ExprMatrix& M, size_t i) {
  std::vector<std::string> row;
  for (size_t j = 0; j < M.cols(); ++j) row.push_back(M.at(i, j).simplified().str());
  return row;
}

ordered_json matrix_strings(const ExprMatrix& M) {
  auto j = ordered_json::array();
  for (size_t i = 0; i < M.rows(); ++i) j.push_back(matrix_strings_row(M, i));
  return j;
}

}  // namespace

RunResult run_verify_web(const WebSpec& spec, const RunOptions& opt) {
  auto start = Clock::now();
  WebSpec s = spec;
  s.seed = opt.seed;
  ordered_json j = inputs_echo("verify-web", s.m, opt);

  std::vector<Point> pts = web_sample_points(s, opt.points);
  TorsionData td = torsion(s);
  double tors = 0.0;
  for (size_t i = 0; i < s.m; ++i)
    for (size_t k = 0; k < s.m; ++k)
      for (size_t t = 0; t < s.m; ++t) {
        tors = std::max(tors, max_abs_at(td.Txx[i][k][t], pts));
        tors = std::max(tors, max_abs_at(td.Tyy[i][k][t], pts));
      }

  CurvatureData cd = curvature(s);
  double ric = 0.0;
  for (size_t a = 0; a < 2 * s.m; ++a)
    for (size_t b = 0; b < 2 * s.m; ++b) ric = std::max(ric, max_abs_at(cd.ricci.at(a, b), pts));

  ordered_json residuals;
  residuals["torsion_max_abs"] = tors;
  residuals["ricci_max_abs"] = ric;

  bool torsion_free = tors < opt.tol;
  bool ricci_flat = ric < opt.tol;
  ordered_json verdicts;
  verdicts["torsion_free"] = torsion_free;
  verdicts["ricci_flat"] = ricci_flat;

  bool hk_fails = false;
  if (s.m == 2) {
    ConformalData cf = conformal_data(s);
    if (cf.hyper_kahler == TriState::NotApplicable) {
      verdicts["hyper_kahler"] = "not_applicable";
    } else {
      double da = 0.0;
      for (const auto& [idx, coeff] : cf.dA.terms()) {
        (void)idx;
        da = std::max(da, max_abs_at(coeff, pts));
      }
      residuals["dA_max_abs"] = da;
      bool hk = cf.hyper_kahler == TriState::True;
      verdicts["hyper_kahler"] = hk;
      hk_fails = !hk;
    }
  } else {
    verdicts["hyper_kahler"] = "not_applicable";
  }

  j["residuals"] = residuals;
  j["verdicts"] = verdicts;
  return finalize(std::move(j), torsion_free && ricci_flat && !hk_fails, opt, start);
}

RunResult run_heavenly_residual(const ThetaSpec& spec, const RunOptions& opt) {
  auto start = Clock::now();
  ThetaSpec s = spec;
  s.seed = opt.seed;
  ordered_json j = inputs_echo("heavenly-residual", s.m, opt);

  std::vector<std::string> vars = s.coords().all();
  std::vector<Point> pts{unit_point(vars)};  // anchor first, then seeded draws
  Sampler sampler(opt.seed);
  for (const Point& p : sampler.admissible_points(opt.points, vars, {})) pts.push_back(p);

  auto comps = heavenly_residual(s);
  double mx = 0.0;
  size_t max_pt = 0;
  for (const auto& [ij, by_eps] : comps)
    for (const auto& [kl, comp] : by_eps) {
      (void)ij;
      (void)kl;
      for (size_t n = 0; n < pts.size(); ++n) {
        double v = std::fabs(comp.eval_double(pts[n]));
        if (v > mx) {
          mx = v;
          max_pt = n;
        }
      }
    }

  j["residuals"] = {{"residual_max_abs", mx}, {"max_at", point_json(pts[max_pt])}};
  bool zero = mx < opt.tol;
  j["verdicts"] = {{"residual_zero", zero}};
  return finalize(std::move(j), zero, opt, start);
}

RunResult run_eq1_check(const HeavenlySpec& spec, const RunOptions& opt) {
  auto start = Clock::now();
  HeavenlySpec s = spec;
  s.seed = opt.seed;
  ordered_json j = inputs_echo("eq1-check", s.m, opt);

  std::vector<std::string> vars = s.coords().all();
  Sampler sampler(opt.seed);
  std::vector<Point> pts = sampler.admissible_points(opt.points, vars, {});

  auto res = eq1_residual(s);
  double mx = 0.0;
  for (size_t i = 0; i < s.m; ++i)
    for (size_t jj = i + 1; jj < s.m; ++jj)
      for (size_t k = 0; k < s.m; ++k) mx = std::max(mx, max_abs_at(res[i][jj][k], pts));

  j["residuals"] = {{"eq1_max_abs", mx}};
  bool holds = mx < opt.tol;
  j["verdicts"] = {{"eq1_holds", holds}};
  return finalize(std::move(j), holds, opt, start);
}

RunResult run_lax_check(const HeavenlySpec& spec, const RunOptions& opt) {
  auto start = Clock::now();
  HeavenlySpec s = spec;
  s.seed = opt.seed;
  ordered_json j = inputs_echo("lax-check", s.m, opt);
  echo_t_samples(j, opt);

  std::vector<std::string> vars = s.coords().all();
  Sampler sampler(opt.seed);
  std::vector<Point> pts = sampler.admissible_points(opt.points, vars, {});

  double mx = 0.0;
  ordered_json per_t;
  for (const Rational& t : opt.t_samples) {
    double mt = 0.0;
    for (const auto& comm : lax_commutators(s, Expr::constant(t)))
      for (const Expr& comp : comm) mt = std::max(mt, max_abs_at(comp, pts));
    per_t[to_string(t)] = mt;
    mx = std::max(mx, mt);
  }

  j["residuals"] = {{"commutator_max_abs", mx}, {"per_t", per_t}};
  bool vanish = mx < opt.tol;
  j["verdicts"] = {{"commutators_vanish", vanish}};
  return finalize(std::move(j), vanish, opt, start);
}

RunResult run_ode_invariants(const OdeSpec& spec, const RunOptions& opt) {
  auto start = Clock::now();
  OdeSpec s = spec;
  s.seed = opt.seed;
  ordered_json j = inputs_echo("ode-invariants", s.m, opt);

  BerwaldData bd = berwald(s);
  ordered_json inv;
  inv["T"] = matrix_strings(jacobi_endomorphism(s));
  inv["wilczynski"] = matrix_strings(wilczynski(s));
  inv["trace_B"] = matrix_strings(bd.trace);
  inv["divergence_linear_in_y"] = bd.divergence_linear_in_y;
  j["invariants"] = inv;
  j["verdicts"] = ordered_json::object();  // report-only command
  return finalize(std::move(j), true, opt, start);
}

RunResult run_gauge_residual(const OdeSpec& spec, const RunOptions& opt) {
  auto start = Clock::now();
  OdeSpec s = spec;
  s.seed = opt.seed;
  if (opt.ttilde.empty())
    throw std::invalid_argument("gauge-residual requires --ttilde with the new time expression");
  ordered_json j = inputs_echo("gauge-residual", s.m, opt);
  j["inputs"]["ttilde"] = opt.ttilde;

  std::vector<std::string> vars = s.jet_vars();
  Expr tt = parse(opt.ttilde, vars);
  Expr res = gauge_residual(s, tt);

  // draw jet points, skipping poles of the residual or of ttilde
  Sampler sampler(opt.seed);
  double mx = 0.0;
  int found = 0, tries = 0;
  while (found < opt.points) {
    if (++tries > 400 * opt.points)
      throw std::runtime_error("gauge-residual: could not sample " + std::to_string(opt.points) +
                               " regular jet points");
    Point p = sampler.point(vars);
    try {
      mx = std::max(mx, std::fabs(res.eval_double(p)));
    } catch (const EvalError&) {
      continue;
    }
    ++found;
  }

  j["residuals"] = {{"gauge_residual_max_abs", mx}};
  bool zero = mx < opt.tol;
  j["verdicts"] = {{"fibration_compatible", zero}};
  return finalize(std::move(j), zero, opt, start);
}

RunResult run_biham_check(const HeavenlySpec& spec, const RunOptions& opt) {
  auto start = Clock::now();
  HeavenlySpec s = spec;
  s.seed = opt.seed;
  ordered_json j = inputs_echo("biham-check", s.m, opt);
  echo_t_samples(j, opt);

  std::vector<Bivector> members;
  for (const Rational& t : opt.t_samples) members.push_back(pencil_bivector(s, Expr::constant(t)));
  const std::vector<std::string>& coords = members.front().coords;
  Sampler sampler(opt.seed);
  std::vector<Point> pts = sampler.admissible_points(opt.points, coords, {});
  size_t n = coords.size();

  double close_mx = 0.0;
  ordered_json witness;
  for (size_t ti = 0; ti < members.size(); ++ti) {
    auto br = schouten_bracket(members[ti], members[ti]);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = a + 1; b < n; ++b)
        for (size_t c = b + 1; c < n; ++c) {
          double v = max_abs_at(br[a][b][c], pts);
          if (v > close_mx) {
            close_mx = v;
            witness = {{"t", to_string(opt.t_samples[ti])},
                       {"component", {coords[a], coords[b], coords[c]}},
                       {"max_abs", v}};
          }
        }
  }
  bool closes = close_mx < opt.tol;

  double compat_mx = 0.0;
  for (size_t ti = 0; ti < members.size(); ++ti)
    for (size_t tj = ti + 1; tj < members.size(); ++tj) {
      auto br = schouten_bracket(members[ti], members[tj]);
      for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
          for (size_t c = b + 1; c < n; ++c)
            compat_mx = std::max(compat_mx, max_abs_at(br[a][b][c], pts));
    }
  bool compatible = compat_mx < opt.tol;

  size_t min_rank = 2 * s.m;
  for (size_t ti = 0; ti < members.size(); ++ti)
    for (const Point& p : pts) min_rank = std::min(min_rank, numeric_rank(members[ti], p, opt.tol));
  bool rank_full = min_rank == 2 * s.m;

  j["residuals"] = {{"closure_max_abs", close_mx},
                    {"compatibility_max_abs", compat_mx},
                    {"min_rank", min_rank}};
  if (!closes) j["residuals"]["witness"] = witness;
  j["verdicts"] = {{"pencil_closes", closes},
                   {"pairwise_compatible", compatible},
                   {"rank_full", rank_full}};
  return finalize(std::move(j), closes && compatible && rank_full, opt, start);
}

RunResult run_solve(const ThetaSpec& spec, const RunOptions& opt) {
  auto start = Clock::now();
  if (spec.m != 2)
    throw std::invalid_argument("solve requires a planar (m = 2) potential seed");
  ordered_json j = inputs_echo("solve", spec.m, opt);
  j["inputs"]["degree"] = opt.degree;

  auto seed = poly_from_expr(spec.theta_at(0, 1));
  if (!seed) throw std::invalid_argument("solve: the seed entry is not polynomial");
  JetSolution sol = jet_solve(*seed, opt.degree);
  Certificate cert = certify(sol);

  auto levels = ordered_json::array();
  for (const LevelReport& lv : sol.levels)
    levels.push_back({{"level", lv.level},
                      {"equations", lv.equations},
                      {"unknowns", lv.unknowns},
                      {"rank", lv.rank},
                      {"unique", lv.unique}});
  j["levels"] = levels;
  j["solution"] = solution_json(sol, cert);
  j["verdicts"] = {{"certificate", cert.all_passed()}};
  return finalize(std::move(j), cert.all_passed(), opt, start);
}

RunResult run_certify(const JetSolution& sol, const RunOptions& opt) {
  auto start = Clock::now();
  ordered_json j = inputs_echo("certify", 2, opt);
  j["inputs"]["degree"] = sol.D;
  Certificate cert = certify(sol);
  j["certificate"] = certificate_json(cert);
  j["verdicts"] = {{"certificate", cert.all_passed()}};
  return finalize(std::move(j), cert.all_passed(), opt, start);
}

RunResult run_command(const std::string& command, const Problem& problem, const RunOptions& opt) {
  auto wrong_kind = [&](const char* expected) -> RunResult {
    throw std::invalid_argument(command + " expects a \"" + expected + "\" spec");
  };
  if (command == "verify-web") {
    if (auto* s = std::get_if<WebSpec>(&problem)) return run_verify_web(*s, opt);
    return wrong_kind("web");
  }
  if (command == "heavenly-residual") {
    if (auto* s = std::get_if<ThetaSpec>(&problem)) return run_heavenly_residual(*s, opt);
    return wrong_kind("theta");
  }
  if (command == "eq1-check") {
    if (auto* s = std::get_if<HeavenlySpec>(&problem)) return run_eq1_check(*s, opt);
    return wrong_kind("heavenly");
  }
  if (command == "lax-check") {
    if (auto* s = std::get_if<HeavenlySpec>(&problem)) return run_lax_check(*s, opt);
    return wrong_kind("heavenly");
  }
  if (command == "ode-invariants") {
    if (auto* s = std::get_if<OdeSpec>(&problem)) return run_ode_invariants(*s, opt);
    return wrong_kind("ode");
  }
  if (command == "gauge-residual") {
    if (auto* s = std::get_if<OdeSpec>(&problem)) return run_gauge_residual(*s, opt);
    return wrong_kind("ode");
  }
  if (command == "biham-check") {
    if (auto* s = std::get_if<HeavenlySpec>(&problem)) return run_biham_check(*s, opt);
    return wrong_kind("heavenly");
  }
  if (command == "solve") {
    if (auto* s = std::get_if<ThetaSpec>(&problem)) return run_solve(*s, opt);
    return wrong_kind("theta");
  }
  throw std::invalid_argument("unknown subcommand \"" + command + "\"");
}

}  // namespace webgeom
