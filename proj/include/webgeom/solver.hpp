#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "webgeom/polynomial.hpp"

namespace webgeom {

// One graded linear solve: the homogeneous degree-(level+2) part of theta is
// chosen so the degree-(level) part of the residual cancels.
struct LevelReport {
  int level = 0;
  size_t equations = 0;
  size_t unknowns = 0;
  size_t rank = 0;
  bool unique = false;    // rank == unknowns
  bool feasible = true;
  std::vector<std::string> inconsistent;  // monomials of equations left unsatisfied
};

struct JetSolution {
  int D = 0;
  Poly seed;
  Poly theta;
  Poly residual;  // exact residual of theta
  std::vector<LevelReport> levels;
};

// Exact residual of the planar second-order equation:
// theta_x1x1 theta_x2x2 - theta_x1x2^2 - theta_x2y1 + theta_x1y2.
Poly heavenly_residual_poly(const Poly& theta);

// Degree-by-degree solve over the rationals (min-norm at each level).  The
// seed fixes the parts of degree <= 3, levels d = 2..D-2 fill in the rest;
// afterwards the residual has no monomial of total degree <= D-2.
// Throws std::invalid_argument when the seed has degree > 3 or its residual
// survives at degrees 0 or 1, and std::runtime_error on an infeasible level.
JetSolution jet_solve(const Poly& seed, int D);

struct Certificate {
  int D = 0;
  // (a) residual support
  bool residual_exact_zero = false;
  int residual_lowest_degree = -1;  // -1 when the residual vanishes
  bool clause_a = false;
  std::string witness;  // lowest surviving monomial when clause (a) fails
  // (b) first-order system residual of R = theta_to_R
  bool eq1_exact_zero = false;
  int eq1_lowest_degree = -1;
  bool clause_b = false;
  // (c) spectral-field commutators at t = 1, 2, 3
  int lax_lowest_degree = -1;
  double lax_truncated_max_abs = 0.0;
  bool clause_c = false;
  // (d) trace of the third-derivative tensor
  bool clause_d = false;
  // (e) frame-level torsion of the induced structure (only meaningful when
  // the residual vanishes identically)
  bool clause_e_applicable = false;
  double frames_torsion_max_abs = 0.0;
  bool clause_e = false;

  bool all_passed() const {
    return clause_a && clause_b && clause_c && clause_d && (!clause_e_applicable || clause_e);
  }
};

Certificate certify(const JetSolution& sol);

}  // namespace webgeom
