#include "webgeom/ode.hpp"

#include <stdexcept>

#include "webgeom/polynomial.hpp"

namespace webgeom {

namespace {

void check_spec(const OdeSpec& spec) {
  if (spec.F.size() != spec.m)
    throw std::invalid_argument("ode spec: needs exactly m right-hand sides");
}

}  // namespace

std::vector<std::string> OdeSpec::jet_vars() const {
  std::vector<std::string> vars{"t"};
  CoordSystem cs = CoordSystem::split(m);
  vars.insert(vars.end(), cs.x.begin(), cs.x.end());
  vars.insert(vars.end(), cs.y.begin(), cs.y.end());
  return vars;
}

Expr total_derivative(const OdeSpec& spec, const Expr& f) {
  check_spec(spec);
  CoordSystem cs = CoordSystem::split(spec.m);
  Expr out = f.diff("t");
  for (size_t i = 0; i < spec.m; ++i)
    out = out + Expr::variable(cs.y[i]) * f.diff(cs.x[i]) + spec.F[i] * f.diff(cs.y[i]);
  return out;
}

ExprMatrix jacobi_endomorphism(const OdeSpec& spec) {
  check_spec(spec);
  CoordSystem cs = CoordSystem::split(spec.m);
  ExprMatrix T(spec.m, spec.m);
  Expr half = Expr::constant(rational(1, 2));
  Expr quarter = Expr::constant(rational(1, 4));
  for (size_t i = 0; i < spec.m; ++i)
    for (size_t j = 0; j < spec.m; ++j) {
      Expr e = -spec.F[j].diff(cs.x[i]) + half * total_derivative(spec, spec.F[j].diff(cs.y[i]));
      for (size_t k = 0; k < spec.m; ++k)
        e = e - quarter * spec.F[k].diff(cs.y[i]) * spec.F[j].diff(cs.y[k]);
      T.at(i, j) = e;
    }
  return T;
}

ExprMatrix wilczynski(const OdeSpec& spec) {
  ExprMatrix T = jacobi_endomorphism(spec);
  Expr tr = Expr::integer(0);
  for (size_t i = 0; i < spec.m; ++i) tr = tr + T.at(i, i);
  Expr mean = tr / Expr::integer(static_cast<long>(spec.m));
  for (size_t i = 0; i < spec.m; ++i) T.at(i, i) = T.at(i, i) - mean;
  return T;
}

BerwaldData berwald(const OdeSpec& spec) {
  check_spec(spec);
  CoordSystem cs = CoordSystem::split(spec.m);
  size_t m = spec.m;
  Expr neg_half = Expr::constant(rational(-1, 2));
  BerwaldData out;
  out.B.assign(m, std::vector<std::vector<std::vector<Expr>>>(
                      m, std::vector<std::vector<Expr>>(m, std::vector<Expr>(m))));
  for (size_t l = 0; l < m; ++l)
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j)
        for (size_t k = 0; k < m; ++k)
          out.B[l][i][j][k] =
              neg_half * spec.F[l].diff(cs.y[i]).diff(cs.y[j]).diff(cs.y[k]);
  out.trace = ExprMatrix(m, m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      Expr s = Expr::integer(0);
      for (size_t k = 0; k < m; ++k) s = s + out.B[k][i][j][k];
      out.trace.at(i, j) = s;
    }

  Expr div = Expr::integer(0);
  for (size_t k = 0; k < m; ++k) div = div + spec.F[k].diff(cs.y[k]);
  // affine test: div - div|_{y=0} - sum_i y_i (dy_i div)|_{y=0} == 0
  auto at_y0 = [&](Expr e) {
    for (const auto& yi : cs.y) e = e.subs(yi, Expr::integer(0));
    return e;
  };
  Expr affine = at_y0(div);
  for (size_t i = 0; i < m; ++i)
    affine = affine + Expr::variable(cs.y[i]) * at_y0(div.diff(cs.y[i]));
  out.divergence_linear_in_y = is_zero_exact(div - affine, spec.jet_vars(), spec.seed);
  return out;
}

OdeSpec veronese_transform(const OdeSpec& spec, const Rational& a, const Rational& b,
                           const Rational& c, const Rational& d) {
  check_spec(spec);
  if (a * d - b * c == 0)
    throw std::invalid_argument("time reparametrization: ad - bc must be nonzero");
  CoordSystem cs = CoordSystem::split(spec.m);
  Expr t = Expr::variable("t");
  // psi = phi^{-1} for phi(s) = (as+b)/(cs+d)
  Expr psi = (Expr::constant(d) * t - Expr::constant(b)) /
             (Expr::constant(a) - Expr::constant(c) * t);
  Expr psi1 = psi.diff("t");
  Expr psi2 = psi1.diff("t");

  OdeSpec out;
  out.m = spec.m;
  out.seed = spec.seed;
  for (size_t i = 0; i < spec.m; ++i) {
    Expr f = spec.F[i].subs("t", psi);  // old time first, so y-substitution keeps the new t
    for (size_t j = 0; j < spec.m; ++j)
      f = f.subs(cs.y[j], Expr::variable(cs.y[j]) / psi1);
    out.F.push_back(psi1 * psi1 * f + Expr::variable(cs.y[i]) * psi2 / psi1);
  }
  return out;
}

ExprMatrix schwarzian_shift(const OdeSpec& spec, const Expr& phi) {
  check_spec(spec);
  CoordSystem cs = CoordSystem::split(spec.m);
  size_t m = spec.m;
  Expr p1 = phi.diff("t");
  Expr p2 = p1.diff("t");

  std::vector<Expr> G;
  for (size_t j = 0; j < m; ++j)
    G.push_back(spec.F[j] / (p1 * p1) - Expr::variable(cs.y[j]) * p2 / (p1 * p1 * p1));

  // total derivative of the transformed system, pulled back to the original
  // jet coordinates
  auto transported = [&](const Expr& h) {
    Expr out = h.diff("t") / p1;
    for (size_t i = 0; i < m; ++i) {
      Expr yi = Expr::variable(cs.y[i]);
      out = out + (p2 / (p1 * p1)) * yi * h.diff(cs.y[i]) + (yi / p1) * h.diff(cs.x[i]) +
            G[i] * p1 * h.diff(cs.y[i]);
    }
    return out;
  };

  Expr half = Expr::constant(rational(1, 2));
  Expr quarter = Expr::constant(rational(1, 4));
  ExprMatrix T = jacobi_endomorphism(spec);
  ExprMatrix shift(m, m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      Expr e = -G[j].diff(cs.x[i]) + half * transported(p1 * G[j].diff(cs.y[i]));
      for (size_t k = 0; k < m; ++k)
        e = e - quarter * (p1 * G[k].diff(cs.y[i])) * (p1 * G[j].diff(cs.y[k]));
      shift.at(i, j) = Expr::integer(2) * (p1 * p1 * e - T.at(i, j));
    }
  return shift;
}

Expr gauge_residual(const OdeSpec& spec, const Expr& ttilde) {
  check_spec(spec);
  if (spec.m != 2)
    throw std::invalid_argument("the fibration residual is defined for m = 2 systems only");
  CoordSystem cs = CoordSystem::split(2);
  Expr g = ttilde.diff("t");
  for (size_t i = 0; i < 2; ++i)
    g = g + Expr::variable(cs.y[i]) * ttilde.diff(cs.x[i]);
  ExprMatrix T = jacobi_endomorphism(spec);
  Expr trT = T.at(0, 0) + T.at(1, 1);
  Expr Xg = total_derivative(spec, g);
  Expr XXg = total_derivative(spec, Xg);
  return g * g * trT + g * XXg - Expr::constant(rational(3, 2)) * Xg * Xg;
}

}  // namespace webgeom
