#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "webgeom/exterior.hpp"
#include "webgeom/expr.hpp"

namespace webgeom {

// A tuple of potentials R = (R^1..R^m) on R^{2m} in coordinates x1..xm,
// y1..ym.  The associated first-order system couples the x-Hessian data of
// the potentials to their mixed x/y derivatives.
struct HeavenlySpec {
  size_t m = 0;
  std::vector<Expr> R;
  uint64_t seed = 12345;

  CoordSystem coords() const { return CoordSystem::split(m); }
};

// res[i][j][k] = sum_l (dx_i R^l dx_l dx_j R^k - dx_j R^l dx_l dx_i R^k)
//              - dy_j dx_i R^k + dy_i dx_j R^k,  antisymmetric in (i, j).
std::vector<std::vector<std::vector<Expr>>> eq1_residual(const HeavenlySpec& spec);

// Normalization R^k = dx_i R^k = dx_i dx_j R^k = 0 along {x = 0}; returns a
// description of every violated condition (empty means the spec passes).
std::vector<std::string> boundary_check(const HeavenlySpec& spec);

// L_i(t) = dx_i + t dy_i + t sum_j (dx_i R^j) dx_j, as 2m coefficient
// vectors over (dx1..dxm, dy1..dym); t may be any expression (a rational
// constant or a formal variable).
std::vector<std::vector<Expr>> lax_fields(const HeavenlySpec& spec, const Expr& t);

// Commutators [L_i, L_j] for i < j in lexicographic pair order; each entry
// holds the 2m components of one commutator.
std::vector<std::vector<Expr>> lax_commutators(const HeavenlySpec& spec, const Expr& t);
std::vector<std::pair<size_t, size_t>> index_pairs(size_t m);  // i < j, lexicographic

// riemann[k][i][j][l] = dx_i dx_j dx_l R^k and its trace over (k = l).
struct PotentialCurvature {
  std::vector<std::vector<std::vector<std::vector<Expr>>>> riemann;
  ExprMatrix ricci_trace;  // m x m
};
PotentialCurvature curvature_from_R(const HeavenlySpec& spec);

// Skew potential collection theta_ij (i < j, 0-based) with optional gauge
// forms f_ij of degree m-3 in the dx differentials only (m >= 3).
struct ThetaSpec {
  size_t m = 0;
  std::map<std::pair<size_t, size_t>, Expr> theta;
  std::map<std::pair<size_t, size_t>, ExprForm> f;
  uint64_t seed = 12345;

  CoordSystem coords() const { return CoordSystem::split(m); }
  Expr theta_at(size_t i, size_t j) const;  // antisymmetric lookup
};

// R^i = sum_{j != i} (-1)^{i+j} dx_j theta_{ji}  (indices read 1-based, so
// for m = 2: R = (dx2 theta, -dx1 theta)).
std::vector<Expr> theta_to_R(const ThetaSpec& spec);

// The second-order residual, one (m-2)-form in the dx differentials per
// pair i < j:  gamma_ij - beta_ij - d_x f_ij, where
//   gamma_ij = sum_{a<b} (dx_i R^a dx_j R^b - dx_j R^a dx_i R^b) eps_ab,
//   beta_ij  = sum_{a<b} (dy_i dx_j theta_ab - dy_j dx_i theta_ab) eps_ab,
// with R = theta_to_R and eps_ab the wedge of every dx_s except s in {a,b}.
std::map<std::pair<size_t, size_t>, ExprForm> heavenly_residual_forms(const ThetaSpec& spec);

// Scalar components: entry [(i,j)][(k,l)] is the eps_kl coefficient of the
// residual form of the pair (i, j).  For m = 2 the single component is
// dx1 dx1 theta * dx2 dx2 theta - (dx1 dx2 theta)^2 - dy1 dx2 theta + dy2 dx1 theta.
std::map<std::pair<size_t, size_t>, std::map<std::pair<size_t, size_t>, Expr>>
heavenly_residual(const ThetaSpec& spec);

// Gauge forms must vanish along {x = 0}; returns violated conditions.
std::vector<std::string> theta_boundary_check(const ThetaSpec& spec);

struct SystemShape {
  size_t equations = 0;
  size_t unknowns = 0;
  size_t constraints = 0;
};
SystemShape system_shape(size_t m);

// Endomorphisms over the (x, y) coordinate frame built from A[j][i] =
// dx_i R^j: an anticommuting pair of involutions I, K and the complex
// structure J = I K (J^2 = -Id).
struct ParaComplexTriple {
  size_t m = 0;
  ExprMatrix I, K, J;
};
ParaComplexTriple para_complex_triple(const HeavenlySpec& spec);

}  // namespace webgeom
