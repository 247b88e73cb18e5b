#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "webgeom/exterior.hpp"
#include "webgeom/expr.hpp"
#include "webgeom/rational.hpp"

namespace webgeom {

// A system x_i'' = F_i(t, x, x') on the jet coordinates (t, x1..xm, y1..ym),
// with y_i standing for x_i'.
struct OdeSpec {
  size_t m = 0;
  std::vector<Expr> F;
  uint64_t seed = 12345;

  std::vector<std::string> jet_vars() const;  // t, x1..xm, y1..ym
};

// X_F f = df/dt + sum_i (y_i df/dx_i + F_i df/dy_i).
Expr total_derivative(const OdeSpec& spec, const Expr& f);

// T_ij = -dx_i F_j + 1/2 X_F(dy_i F_j) - 1/4 sum_k dy_i F_k dy_k F_j.
ExprMatrix jacobi_endomorphism(const OdeSpec& spec);

// Trace-free part T - (tr T / m) Id.
ExprMatrix wilczynski(const OdeSpec& spec);

// B[l][i][j][k] = -1/2 dy_i dy_j dy_k F_l and its trace over (l = k);
// divergence_linear_in_y reports whether sum_k dy_k F_k is affine in y
// (checked by substitution, independently of the trace entries).
struct BerwaldData {
  std::vector<std::vector<std::vector<std::vector<Expr>>>> B;
  ExprMatrix trace;
  bool divergence_linear_in_y = false;
};
BerwaldData berwald(const OdeSpec& spec);

// Time reparametrization by the fractional-linear map phi(s) = (as+b)/(cs+d)
// (ad - bc != 0): the transformed system is
//   F~_i = psi'(t)^2 F_i(psi(t), x, y/psi'(t)) + y_i psi''(t)/psi'(t)
// with psi = phi^{-1}.
OdeSpec veronese_transform(const OdeSpec& spec, const Rational& a, const Rational& b,
                           const Rational& c, const Rational& d);

// 2 [ phi'(t)^2 (T~ o Phi) - T ] for an arbitrary reparametrization t~ =
// phi(t), pulled back to the original jet coordinates; for fractional-linear
// phi this vanishes, and in general it is a multiple of the identity by the
// Schwarzian derivative of phi.
ExprMatrix schwarzian_shift(const OdeSpec& spec, const Expr& phi);

// m = 2 only: with g = X_F(t~) for a candidate fibration t~(t, x),
//   residual = g^2 tr T + g X_F^2(g) - 3/2 X_F(g)^2.
Expr gauge_residual(const OdeSpec& spec, const Expr& ttilde);

}  // namespace webgeom
