#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "webgeom/io.hpp"

namespace webgeom {

// Options shared by every subcommand; unused fields are ignored.
struct RunOptions {
  std::string spec_path;  // echoed in the report only
  int points = 10;
  double tol = 1e-9;
  uint64_t seed = 12345;
  std::vector<Rational> t_samples{Rational(1), Rational(2), Rational(3)};
  int degree = 6;
  std::string ttilde;  // reparametrized time for gauge-residual
  bool timing = false;
};

struct RunResult {
  nlohmann::ordered_json report;
  int exit_code = 0;  // 0: all verdicts pass, 1: a verdict failed
};

RunResult run_verify_web(const WebSpec& spec, const RunOptions& opt);
RunResult run_heavenly_residual(const ThetaSpec& spec, const RunOptions& opt);
RunResult run_eq1_check(const HeavenlySpec& spec, const RunOptions& opt);
RunResult run_lax_check(const HeavenlySpec& spec, const RunOptions& opt);
RunResult run_ode_invariants(const OdeSpec& spec, const RunOptions& opt);
RunResult run_gauge_residual(const OdeSpec& spec, const RunOptions& opt);
RunResult run_biham_check(const HeavenlySpec& spec, const RunOptions& opt);
RunResult run_solve(const ThetaSpec& spec, const RunOptions& opt);
RunResult run_certify(const JetSolution& sol, const RunOptions& opt);

// Dispatches a problem document to the matching subcommand; throws
// std::invalid_argument when the problem kind does not fit the command
// (certify takes a solution document and is dispatched separately).
RunResult run_command(const std::string& command, const Problem& problem, const RunOptions& opt);

}  // namespace webgeom
