#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "webgeom/exterior.hpp"
#include "webgeom/expr.hpp"
#include "webgeom/heavenly.hpp"

namespace webgeom {

// An antisymmetric contravariant 2-tensor over an explicit coordinate list;
// comp.at(a, b) is the (d_a, d_b) component.
struct Bivector {
  std::vector<std::string> coords;
  ExprMatrix comp;
};

// The pencil member P(t) = sum_i L_i(t) /\ d_{p_i} over (x1..xm, y1..ym,
// p1..pm), where L_i(t) are the spectral fields of the potential tuple;
// t may be a rational constant or a formal variable.
Bivector pencil_bivector(const HeavenlySpec& spec, const Expr& t);

// {f, g} = sum_{ab} P^{ab} d_a f d_b g.
Expr poisson_bracket(const Bivector& P, const Expr& f, const Expr& g);

// Schouten bracket of two bivectors on the same coordinates:
// [P,Q]^{abc} = sum_d (P^{da} d_d Q^{bc} + Q^{da} d_d P^{bc}) + cyclic(a,b,c).
// P is Poisson iff [P,P] = 0; P and Q are compatible iff in addition
// [P,Q] = 0.
std::vector<std::vector<std::vector<Expr>>> schouten_bracket(const Bivector& P,
                                                             const Bivector& Q);

// Rank of the component matrix at a point (entries must evaluate; partial
// pivoting, with an absolute threshold for pivot acceptance).
size_t numeric_rank(const Bivector& P, const Point& p, double tol = 1e-9);

// Rank of the pencil member P(t) at a point; 2m on the open stratum.
size_t kronecker_rank(const HeavenlySpec& spec, const Expr& t, const Point& p,
                      double tol = 1e-9);

}  // namespace webgeom
