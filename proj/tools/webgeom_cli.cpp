#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "webgeom/report.hpp"

using namespace webgeom;

int main(int argc, char** argv) {
  CLI::App app{"exact geometric checks: web connections, heavenly potentials, "
               "second-order ODE invariants, and bi-Hamiltonian pencils"};
  app.require_subcommand(1);

  RunOptions opt;
  std::vector<std::string> t_samples_raw;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", opt.spec_path, "problem document (JSON)")->required();
    sub->add_option("--points", opt.points, "number of sample points")->capture_default_str();
    sub->add_option("--tol", opt.tol, "verdict tolerance")->capture_default_str();
    sub->add_option("--seed", opt.seed, "sampling seed")->capture_default_str();
    sub->add_flag("--timing", opt.timing, "include wall-clock timing in the report");
    return sub;
  };
  auto add_t_samples = [&](CLI::App* sub) {
    sub->add_option("--t-samples", t_samples_raw,
                    "spectral parameter values (rationals, comma separated)")
        ->delimiter(',');
    return sub;
  };

  add_common(app.add_subcommand("verify-web", "torsion, Ricci, and conformal verdicts of a web"));
  add_common(app.add_subcommand("heavenly-residual",
                                "second-order residual of a potential collection"));
  add_common(app.add_subcommand("eq1-check", "first-order system residual of a potential tuple"));
  add_t_samples(add_common(
      app.add_subcommand("lax-check", "commutators of the spectral fields at sample parameters")));
  add_common(app.add_subcommand("ode-invariants",
                                "Jacobi endomorphism, Wilczynski part, and third-derivative "
                                "trace of a second-order system"));
  CLI::App* gauge = add_common(
      app.add_subcommand("gauge-residual", "compatibility residual of a time reparametrization"));
  gauge->add_option("--ttilde", opt.ttilde, "new time as an expression in the jet variables");
  add_t_samples(add_common(
      app.add_subcommand("biham-check", "closure, compatibility, and rank of the pencil")));
  CLI::App* solve =
      add_common(app.add_subcommand("solve", "extend a polynomial seed degree by degree"));
  solve->add_option("--degree", opt.degree, "target degree D")->capture_default_str();
  add_common(app.add_subcommand("certify", "re-check the clauses of a stored solution"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean; bad usage is an input error
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (!t_samples_raw.empty()) {
      opt.t_samples.clear();
      for (const std::string& s : t_samples_raw) opt.t_samples.push_back(rational_from_string(s));
    }

    RunResult result;
    if (command == "certify") {
      result = run_certify(load_solution(opt.spec_path), opt);
    } else {
      result = run_command(command, load_problem(opt.spec_path), opt);
    }
    std::cout << result.report.dump(2) << "\n";
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
