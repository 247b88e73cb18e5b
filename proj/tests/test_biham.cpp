#include "webgeom/biham.hpp"

#include <random>

#include "doctest.h"
#include "webgeom/polynomial.hpp"
#include "webgeom/sampling.hpp"

using namespace webgeom;

namespace {

HeavenlySpec make_spec(size_t m, const std::vector<std::string>& exprs) {
  HeavenlySpec spec;
  spec.m = m;
  std::vector<std::string> coords = CoordSystem::split(m).all();
  for (const auto& s : exprs) spec.R.push_back(parse(s, coords));
  return spec;
}

std::vector<std::string> pencil_vars(size_t m, bool with_t) {
  std::vector<std::string> vars = CoordSystem::split(m).all();
  for (size_t i = 0; i < m; ++i) vars.push_back("p" + std::to_string(i + 1));
  if (with_t) vars.push_back("t");
  return vars;
}

bool trivector_zero(const std::vector<std::vector<std::vector<Expr>>>& T,
                    const std::vector<std::string>& vars) {
  for (const auto& a : T)
    for (const auto& b : a)
      for (const auto& e : b)
        if (!is_zero_exact(e, vars)) return false;
  return true;
}

}  // namespace

TEST_CASE("canonical bivector is closed under the bracket") {
  Bivector P;
  P.coords = {"u", "v", "w"};
  P.comp = ExprMatrix(3, 3);
  P.comp.at(0, 1) = Expr::integer(1);
  P.comp.at(1, 0) = Expr::integer(-1);
  CHECK(trivector_zero(schouten_bracket(P, P), P.coords));
  Expr u = Expr::variable("u"), v = Expr::variable("v");
  CHECK(poisson_bracket(P, u, v).is_const(rational(1, 1)));
  CHECK(poisson_bracket(P, v, u).is_const(rational(-1, 1)));
}

TEST_CASE("bracket convention pinned against the jacobiator") {
  // P^{uv} = w, P^{uw} = v, P^{vw} = w: not closed; the jacobiator of the
  // coordinate functions is v, and [P,P]^{uvw} must be -2 times it.
  Bivector P;
  P.coords = {"u", "v", "w"};
  P.comp = ExprMatrix(3, 3);
  auto put = [&](size_t a, size_t b, const Expr& e) {
    P.comp.at(a, b) = e;
    P.comp.at(b, a) = -e;
  };
  put(0, 1, Expr::variable("w"));
  put(0, 2, Expr::variable("v"));
  put(1, 2, Expr::variable("w"));

  Expr u = Expr::variable("u"), v = Expr::variable("v"), w = Expr::variable("w");
  Expr jac = poisson_bracket(P, u, poisson_bracket(P, v, w)) +
             poisson_bracket(P, v, poisson_bracket(P, w, u)) +
             poisson_bracket(P, w, poisson_bracket(P, u, v));
  CHECK(is_zero_exact(jac - v, P.coords));

  auto S = schouten_bracket(P, P);
  CHECK(is_zero_exact(S[0][1][2] + Expr::integer(2) * jac, P.coords));
  CHECK_FALSE(trivector_zero(S, P.coords));
}

TEST_CASE("schouten bracket output is antisymmetric") {
  HeavenlySpec spec = make_spec(2, {"x1*y2", "x2^2*y1"});
  Bivector P = pencil_bivector(spec, Expr::variable("t"));
  auto S = schouten_bracket(P, P);
  std::vector<std::string> vars = pencil_vars(2, true);
  size_t n = P.coords.size();
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t c = 0; c < n; ++c) {
        CHECK(is_zero_exact(S[a][b][c] + S[b][a][c], vars));
        CHECK(is_zero_exact(S[a][b][c] + S[a][c][b], vars));
      }
}

TEST_CASE("pencil member: frozen entries") {
  HeavenlySpec spec = make_spec(2, {"0", "-x1^2/2"});
  Expr t = Expr::variable("t");
  Bivector P = pencil_bivector(spec, t);
  REQUIRE(P.coords == std::vector<std::string>{"x1", "x2", "y1", "y2", "p1", "p2"});
  std::vector<std::string> vars = pencil_vars(2, true);

  // L_1 = dx1 + t dy1 - t x1 dx2;  L_2 = dx2 + t dy2
  CHECK(is_zero_exact(P.comp.at(0, 4) - Expr::integer(1), vars));
  CHECK(is_zero_exact(P.comp.at(1, 4) + t * Expr::variable("x1"), vars));
  CHECK(is_zero_exact(P.comp.at(2, 4) - t, vars));
  CHECK(is_zero_exact(P.comp.at(3, 4), vars));
  CHECK(is_zero_exact(P.comp.at(1, 5) - Expr::integer(1), vars));
  CHECK(is_zero_exact(P.comp.at(3, 5) - t, vars));
  // base-by-base block and momentum-by-momentum block vanish
  for (size_t a = 0; a < 4; ++a)
    for (size_t b = 0; b < 4; ++b) CHECK(P.comp.at(a, b).is_const(rational(0, 1)));
  CHECK(P.comp.at(4, 5).is_const(rational(0, 1)));
}

TEST_CASE("pencil closes exactly on solutions") {
  Expr t = Expr::variable("t");
  for (auto spec : {make_spec(2, {"x1*y1", "0"}), make_spec(2, {"x1^3 + x1", "x2^2/2"}),
                    make_spec(3, {"0", "x2^2*y2 + x2*y2^3", "0"})}) {
    Bivector P = pencil_bivector(spec, t);
    CHECK(trivector_zero(schouten_bracket(P, P), pencil_vars(spec.m, true)));
  }

  HeavenlySpec witness = make_spec(2, {"x1*y2", "0"});
  Bivector W = pencil_bivector(witness, t);
  CHECK_FALSE(trivector_zero(schouten_bracket(W, W), pencil_vars(2, true)));
}

TEST_CASE("bracket components stay quadratic in the pencil parameter") {
  HeavenlySpec spec = make_spec(2, {"x1*y2 + x1^2*y1", "x2*y1"});
  Bivector P = pencil_bivector(spec, Expr::variable("t"));
  auto S = schouten_bracket(P, P);
  for (const auto& a : S)
    for (const auto& b : a)
      for (const auto& e : b) {
        auto poly = poly_from_expr(e);
        REQUIRE(poly.has_value());
        for (const auto& [mono, c] : poly->terms()) {
          (void)c;
          auto it = mono.find("t");
          CHECK((it == mono.end() || it->second <= 2));
        }
      }
}

TEST_CASE("pairs of pencil members are compatible on solutions") {
  HeavenlySpec spec = make_spec(2, {"x1*y1", "0"});
  std::vector<std::string> vars = pencil_vars(2, false);
  auto member = [&](long v) { return pencil_bivector(spec, Expr::integer(v)); };
  for (auto [s, t] : std::vector<std::pair<long, long>>{{0, 1}, {1, 2}, {-1, 3}}) {
    auto mixed = schouten_bracket(member(s), member(t));
    CHECK(trivector_zero(mixed, vars));
  }
}

TEST_CASE("pencil rank is twice the function count") {
  Sampler sampler(777);
  for (auto spec : {make_spec(2, {"x1*y1", "0"}), make_spec(3, {"0", "x2^2*y2", "0"})}) {
    std::vector<std::string> vars = pencil_vars(spec.m, false);
    for (long tv : {0L, 1L, 2L, -1L}) {
      Point p = sampler.point(vars);
      CHECK(kronecker_rank(spec, Expr::integer(tv), p) == 2 * spec.m);
    }
  }
}
