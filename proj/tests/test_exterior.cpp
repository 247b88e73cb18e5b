#include <doctest.h>

#include <random>

#include "webgeom/exterior.hpp"
#include "webgeom/polynomial.hpp"

using namespace webgeom;

namespace {

Rational rat(long p, long q = 1) { return rational(p, q); }

Expr rp(std::mt19937_64& rng, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> coef(-5, 5), pick(0, static_cast<int>(vars.size()) - 1),
      deg(1, 3), nt(1, 3);
  Expr sum = Expr::integer(0);
  for (int t = nt(rng); t > 0; --t) {
    Expr term = Expr::integer(coef(rng));
    for (int d = deg(rng); d > 0; --d) term = term * Expr::variable(vars[pick(rng)]);
    sum = sum + term;
  }
  return sum;
}

bool form_vanishes(const ExprForm& w, const CoordSystem& cs) {
  for (const auto& [idx, c] : w.terms())
    if (!is_zero_exact(c, cs.all())) return false;
  return true;
}

}  // namespace

TEST_CASE("determinant and adjugate of a rational matrix") {
  ExprMatrix m(2, 2);
  m.at(0, 0) = Expr::integer(1);
  m.at(0, 1) = Expr::integer(2);
  m.at(1, 0) = Expr::integer(3);
  m.at(1, 1) = Expr::integer(4);
  auto [det, adj] = det_and_adjugate(m);
  CHECK(det.is_const(rat(-2)));
  CHECK(adj.at(0, 0).is_const(rat(4)));
  CHECK(adj.at(0, 1).is_const(rat(-2)));
  CHECK(adj.at(1, 0).is_const(rat(-3)));
  CHECK(adj.at(1, 1).is_const(rat(1)));

  ExprMatrix inv = inverse(m);
  CHECK(inv.at(0, 0).is_const(rat(-2)));
  CHECK(inv.at(0, 1).is_const(rat(1)));
  CHECK(inv.at(1, 0).is_const(rat(3, 2)));
  CHECK(inv.at(1, 1).is_const(rat(-1, 2)));
}

TEST_CASE("adjugate identity adj(M)*M = det(M)*Id for symbolic matrices") {
  CoordSystem cs = CoordSystem::split(2);
  std::vector<std::string> vars = cs.all();
  std::mt19937_64 rng(99);
  for (size_t n : {2, 3, 4}) {
    ExprMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        m.at(i, j) = rp(rng, vars) + (i == j ? Expr::integer(1) : Expr::integer(0));
    auto [det, adj] = det_and_adjugate(m);
    ExprMatrix lhs = adj * m;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Expr want = (i == j) ? det : Expr::integer(0);
        CHECK(is_zero_exact(lhs.at(i, j) - want, vars));
      }
  }

  // A singular symbolic matrix has identically-zero determinant.
  ExprMatrix s(2, 2);
  s.at(0, 0) = Expr::variable("x1");
  s.at(0, 1) = Expr::variable("y1");
  s.at(1, 0) = Expr::variable("x1") * Expr::integer(3);
  s.at(1, 1) = Expr::variable("y1") * Expr::integer(3);
  CHECK(is_zero_exact(determinant(s), vars));
}

TEST_CASE("matrix inverse entries are exact rational functions") {
  ExprMatrix m(2, 2);
  m.at(0, 0) = Expr::integer(1);
  m.at(0, 1) = Expr::variable("x1");
  m.at(1, 0) = Expr::variable("y1");
  m.at(1, 1) = Expr::integer(1);
  ExprMatrix inv = inverse(m);
  ExprMatrix prod = m * inv;
  std::vector<std::string> vars{"x1", "y1"};
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      Expr want = (i == j) ? Expr::integer(1) : Expr::integer(0);
      CHECK(is_zero_exact(prod.at(i, j) - want, vars));
    }
}

TEST_CASE("wedge products respect the global differential ordering") {
  CoordSystem cs = CoordSystem::split(2);
  CHECK(cs.all() == std::vector<std::string>{"x1", "x2", "y1", "y2"});
  CHECK(cs.differential_name(2) == "dy1");
  CHECK(cs.index_of("y2") == 3);

  ExprForm dx1 = ExprForm::differential(0);
  ExprForm dy1 = ExprForm::differential(2);
  ExprForm w = wedge(dx1, dy1);
  CHECK(w.coefficient({0, 2}).is_const(rat(1)));
  CHECK(w.coefficient({2, 0}).is_const(rat(-1)));

  CHECK(wedge(dx1, dx1).empty());
  ExprForm anti = wedge(dy1, dx1) + wedge(dx1, dy1);
  CHECK(anti.empty());

  // Unsorted term input is normalised with its permutation sign.
  ExprForm t = ExprForm::term(Expr::variable("x1"), {3, 0});
  CHECK(t.coefficient({0, 3}).str() == "-x1");
  CHECK(t.coefficient({3, 0}).str() == "x1");
  CHECK(t.coefficient({3, 3}).is_const(rat(0)));
}

TEST_CASE("exterior derivative of a function") {
  CoordSystem cs = CoordSystem::split(2);
  Expr f = parse("x1^2 * y1", cs.all());
  ExprForm df = exterior_derivative(ExprForm::function(f), cs);
  CHECK(df.degree() == 1);
  CHECK(df.coefficient({0}).same_structure(parse("2*x1*y1")));
  CHECK(df.coefficient({2}).same_structure(parse("x1^2")));
  CHECK(df.coefficient({1}).is_const(rat(0)));

  // The split derivative reproduces the full one: d = d_x + d_y.
  ExprForm dx = exterior_derivative(ExprForm::function(f), cs, DMode::X);
  ExprForm dy = exterior_derivative(ExprForm::function(f), cs, DMode::Y);
  CHECK(form_vanishes(df - (dx + dy), cs));
  CHECK(dx.coefficient({2}).is_const(rat(0)));
  CHECK(dy.coefficient({0}).is_const(rat(0)));
}

TEST_CASE("d compose d vanishes identically") {
  CoordSystem cs = CoordSystem::split(3);
  std::vector<std::string> vars = cs.all();
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 8; ++trial) {
    ExprForm w;
    for (size_t i = 0; i < cs.dim(); ++i)
      w = w + ExprForm::differential(i).scaled(rp(rng, vars));
    ExprForm ddw = exterior_derivative(exterior_derivative(w, cs), cs);
    CHECK(form_vanishes(ddw, cs));
  }
}

TEST_CASE("Leibniz rule for the wedge product") {
  CoordSystem cs = CoordSystem::split(2);
  std::vector<std::string> vars = cs.all();
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 6; ++trial) {
    // a: 1-form, b: 1-form; d(a ^ b) = da ^ b - a ^ db.
    ExprForm a, b;
    for (size_t i = 0; i < cs.dim(); ++i) {
      a = a + ExprForm::differential(i).scaled(rp(rng, vars));
      b = b + ExprForm::differential(i).scaled(rp(rng, vars));
    }
    ExprForm lhs = exterior_derivative(wedge(a, b), cs);
    ExprForm rhs = wedge(exterior_derivative(a, cs), b) - wedge(a, exterior_derivative(b, cs));
    CHECK(form_vanishes(lhs - rhs, cs));
  }
}
