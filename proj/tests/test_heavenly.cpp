#include "webgeom/heavenly.hpp"

#include <random>

#include "doctest.h"
#include "webgeom/polynomial.hpp"

using namespace webgeom;

namespace {

HeavenlySpec make_spec(size_t m, const std::vector<std::string>& exprs, uint64_t seed = 12345) {
  HeavenlySpec spec;
  spec.m = m;
  spec.seed = seed;
  std::vector<std::string> coords = CoordSystem::split(m).all();
  for (const auto& s : exprs) spec.R.push_back(parse(s, coords));
  return spec;
}

bool expr_zero(const Expr& e, size_t m, uint64_t seed = 12345, bool with_t = false) {
  std::vector<std::string> vars = CoordSystem::split(m).all();
  if (with_t) vars.push_back("t");
  return is_zero_exact(e, vars, seed);
}

bool residual_zero(const HeavenlySpec& spec) {
  auto res = eq1_residual(spec);
  for (const auto& p : res)
    for (const auto& r : p)
      for (const auto& e : r)
        if (!expr_zero(e, spec.m, spec.seed)) return false;
  return true;
}

bool commutators_zero(const HeavenlySpec& spec, const Expr& t) {
  for (const auto& comm : lax_commutators(spec, t))
    for (const auto& e : comm)
      if (!expr_zero(e, spec.m, spec.seed, true)) return false;
  return true;
}

Expr random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int terms) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<size_t> pick(0, vars.size() - 1);
  std::uniform_int_distribution<int> degree(1, 3);
  Expr out = Expr::integer(0);
  for (int t = 0; t < terms; ++t) {
    int c = coeff(rng);
    if (c == 0) continue;
    Expr mono = Expr::constant(rational(c, 4));
    int d = degree(rng);
    for (int k = 0; k < d; ++k) mono = mono * Expr::variable(vars[pick(rng)]);
    out = out + mono;
  }
  return out;
}

// Cubics with guaranteed x.x.y monomials, so the residuals below do not
// vanish by accident of sparsity.
Expr mixed_poly(std::mt19937_64& rng, size_t m, int terms) {
  CoordSystem cs = CoordSystem::split(m);
  std::uniform_int_distribution<int> coeff(1, 5);
  std::uniform_int_distribution<int> sgn(0, 1);
  std::uniform_int_distribution<size_t> pick(0, m - 1);
  Expr out = Expr::integer(0);
  for (int t = 0; t < terms; ++t) {
    Expr mono = Expr::constant(rational(sgn(rng) ? coeff(rng) : -coeff(rng), 4));
    mono = mono * Expr::variable(cs.x[pick(rng)]) * Expr::variable(cs.x[pick(rng)]) *
           Expr::variable(cs.y[pick(rng)]);
    out = out + mono;
  }
  return out;
}

}  // namespace

TEST_CASE("solution families: first-order residual and commutators vanish") {
  Expr t = Expr::variable("t");
  for (auto spec : {make_spec(2, {"x1*y1", "0"}),
                    make_spec(2, {"x1^3 + x1", "x2^2/2"}),
                    make_spec(2, {"x1*(y1^2 + y1)", "0"}),
                    make_spec(3, {"0", "x2^2*y2 + x2*y2^3", "0"})}) {
    CHECK(residual_zero(spec));
    CHECK(commutators_zero(spec, t));
  }
}

TEST_CASE("nonzero witness: residual and commutators match through t^2") {
  HeavenlySpec spec = make_spec(2, {"x1*y2", "0"});
  auto res = eq1_residual(spec);
  CHECK(expr_zero(res[0][1][0] + Expr::integer(1), 2));  // res_{12,1} = -1
  CHECK(expr_zero(res[0][1][1], 2));
  CHECK_FALSE(residual_zero(spec));

  Expr t = Expr::variable("t");
  auto comms = lax_commutators(spec, t);
  REQUIRE(comms.size() == 1);
  // [L_1, L_2] = t^2 * sum_k res_{12,k} dx_k = -t^2 dx_1
  CHECK(expr_zero(comms[0][0] + t * t, 2, 12345, true));
  for (size_t c = 1; c < 4; ++c) CHECK(expr_zero(comms[0][c], 2, 12345, true));
}

TEST_CASE("commutators equal t^2 times the residual for arbitrary potentials") {
  std::mt19937_64 rng(771);
  Expr t = Expr::variable("t");
  for (size_t m : {size_t(2), size_t(3)}) {
    std::vector<std::string> vars = CoordSystem::split(m).all();
    for (int trial = 0; trial < 4; ++trial) {
      HeavenlySpec spec;
      spec.m = m;
      for (size_t i = 0; i < m; ++i) spec.R.push_back(random_poly(rng, vars, 3));
      auto res = eq1_residual(spec);
      auto comms = lax_commutators(spec, t);
      auto pairs = index_pairs(m);
      for (size_t p = 0; p < pairs.size(); ++p) {
        auto [i, j] = pairs[p];
        for (size_t k = 0; k < m; ++k)
          CHECK(expr_zero(comms[p][k] - t * t * res[i][j][k], m, 12345, true));
        for (size_t k = m; k < 2 * m; ++k) CHECK(expr_zero(comms[p][k], m, 12345, true));
      }
    }
  }
}

TEST_CASE("commutator coefficients are quadratic in the spectral parameter") {
  std::mt19937_64 rng(88);
  std::vector<std::string> vars = CoordSystem::split(2).all();
  HeavenlySpec spec;
  spec.m = 2;
  for (size_t i = 0; i < 2; ++i) spec.R.push_back(random_poly(rng, vars, 4));
  auto comms = lax_commutators(spec, Expr::variable("t"));
  for (const auto& comm : comms)
    for (const auto& e : comm) {
      auto p = poly_from_expr(e);
      REQUIRE(p.has_value());
      for (const auto& [mono, c] : p->terms()) {
        (void)c;
        auto it = mono.find("t");
        CHECK((it == mono.end() || it->second <= 2));
      }
    }
}

TEST_CASE("boundary normalization report") {
  CHECK(boundary_check(make_spec(2, {"x1^3", "x1^2*x2"})).empty());
  auto v1 = boundary_check(make_spec(2, {"0", "-x1^2/2"}));
  REQUIRE(v1.size() == 1);
  CHECK(v1[0] == "dx1 dx1 R^2(0, y) != 0");
  auto v2 = boundary_check(make_spec(2, {"y1", "0"}));
  REQUIRE(v2.size() == 1);
  CHECK(v2[0] == "R^1(0, y) != 0");
  auto v3 = boundary_check(make_spec(2, {"x1*y1", "0"}));
  REQUIRE(v3.size() == 1);
  CHECK(v3[0] == "dx1 R^1(0, y) != 0");
}

TEST_CASE("third x-derivatives and their trace") {
  HeavenlySpec flat = make_spec(2, {"0", "-x1^2/2"});
  PotentialCurvature pc = curvature_from_R(flat);
  for (size_t k = 0; k < 2; ++k)
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j)
        for (size_t l = 0; l < 2; ++l) CHECK(expr_zero(pc.riemann[k][i][j][l], 2));
  CHECK(expr_zero(pc.ricci_trace.at(0, 0), 2));

  HeavenlySpec cubic = make_spec(2, {"x1^3", "0"});
  PotentialCurvature pc2 = curvature_from_R(cubic);
  CHECK(expr_zero(pc2.riemann[0][0][0][0] - Expr::integer(6), 2));
  CHECK(expr_zero(pc2.ricci_trace.at(0, 0) - Expr::integer(6), 2));
  CHECK(expr_zero(pc2.ricci_trace.at(0, 1) - pc2.ricci_trace.at(1, 0), 2));
}

TEST_CASE("skew potential to potential tuple") {
  ThetaSpec ts;
  ts.m = 2;
  ts.theta[{0, 1}] = parse("x1^3/6", {"x1"});
  auto R = theta_to_R(ts);
  REQUIRE(R.size() == 2);
  CHECK(expr_zero(R[0], 2));
  CHECK(expr_zero(R[1] + parse("x1^2/2", {"x1"}), 2));
}

TEST_CASE("planar residual: frozen values") {
  ThetaSpec cubic;
  cubic.m = 2;
  cubic.theta[{0, 1}] = parse("x1^3/6", {"x1"});
  auto res = heavenly_residual(cubic);
  CHECK(expr_zero(res[{0, 1}][{0, 1}], 2));

  ThetaSpec quartic;
  quartic.m = 2;
  quartic.theta[{0, 1}] = parse("x1^2*x2^2", {"x1", "x2"});
  auto res2 = heavenly_residual(quartic);
  Expr expected = parse("-12*x1^2*x2^2", {"x1", "x2"});
  CHECK(expr_zero(res2[{0, 1}][{0, 1}] - expected, 2));
  Point ones{{"x1", rational(1, 1)}, {"x2", rational(1, 1)},
             {"y1", rational(1, 1)}, {"y2", rational(1, 1)}};
  CHECK(res2[{0, 1}][{0, 1}].eval_double(ones) == doctest::Approx(-12.0));

  ThetaSpec mixed;
  mixed.m = 2;
  mixed.theta[{0, 1}] = parse("x1^3/6 + x1*x2*y1", {"x1", "x2", "y1"});
  auto res3 = heavenly_residual(mixed);
  // quadratic part -y1^2, mixed part -x1
  Expr want = parse("-y1^2 - x1", {"x1", "y1"});
  CHECK(expr_zero(res3[{0, 1}][{0, 1}] - want, 2));
}

TEST_CASE("first-order residual is a derivative of the second-order one") {
  std::mt19937_64 rng(424);
  for (size_t m : {size_t(2), size_t(3)}) {
    std::vector<std::string> vars = CoordSystem::split(m).all();
    CoordSystem cs = CoordSystem::split(m);
    std::vector<int> sign(m, 0);  // discovered per k, fixed across pairs/trials
    for (int trial = 0; trial < 3; ++trial) {
      ThetaSpec ts;
      ts.m = m;
      for (auto [a, b] : index_pairs(m)) ts.theta[{a, b}] = mixed_poly(rng, m, 3);
      HeavenlySpec hs;
      hs.m = m;
      hs.R = theta_to_R(ts);
      auto res = eq1_residual(hs);
      auto forms = heavenly_residual_forms(ts);
      for (auto [i, j] : index_pairs(m)) {
        ExprForm dform = exterior_derivative(forms[{i, j}], cs, DMode::X);
        for (size_t k = 0; k < m; ++k) {
          std::vector<int> others;
          for (size_t s = 0; s < m; ++s)
            if (s != k) others.push_back(static_cast<int>(s));
          Expr coeff = dform.coefficient(others);
          bool plus = is_zero_exact(res[i][j][k] - coeff, vars);
          bool minus = is_zero_exact(res[i][j][k] + coeff, vars);
          CHECK((plus || minus));
          int found = plus ? 1 : -1;
          if (plus && minus) continue;  // both sides vanish, no information
          if (sign[k] == 0) sign[k] = found;
          CHECK(sign[k] == found);
        }
      }
    }
    for (size_t k = 0; k < m; ++k) CHECK(sign[k] != 0);
  }
}

TEST_CASE("gauge forms drop out of the derivative identity") {
  std::mt19937_64 rng(9090);
  std::vector<std::string> vars = CoordSystem::split(3).all();
  CoordSystem cs = CoordSystem::split(3);
  ThetaSpec bare;
  bare.m = 3;
  for (auto [a, b] : index_pairs(3)) bare.theta[{a, b}] = random_poly(rng, vars, 3);
  ThetaSpec gauged = bare;
  gauged.f[{0, 1}] = ExprForm::function(parse("x1*x2*y3 + x3^2", vars));
  gauged.f[{1, 2}] = ExprForm::function(parse("x1*y1", vars));

  auto f0 = heavenly_residual_forms(bare);
  auto f1 = heavenly_residual_forms(gauged);
  for (auto [i, j] : index_pairs(3)) {
    ExprForm d0 = exterior_derivative(f0[{i, j}], cs, DMode::X);
    ExprForm d1 = exterior_derivative(f1[{i, j}], cs, DMode::X);
    ExprForm diff = d0 - d1;
    for (const auto& [idx, c] : diff.terms()) {
      (void)idx;
      CHECK(is_zero_exact(c, vars));
    }
  }
  // but the residual components themselves shift
  auto r0 = heavenly_residual(bare);
  auto r1 = heavenly_residual(gauged);
  bool shifted = false;
  for (auto [i, j] : index_pairs(3))
    for (auto [k, l] : index_pairs(3))
      if (!is_zero_exact(r0[{i, j}][{k, l}] - r1[{i, j}][{k, l}], vars)) shifted = true;
  CHECK(shifted);
}

TEST_CASE("gauge form validation") {
  ThetaSpec planar;
  planar.m = 2;
  planar.theta[{0, 1}] = parse("x1^3/6", {"x1"});
  planar.f[{0, 1}] = ExprForm::function(Expr::integer(1));
  CHECK_THROWS_AS(theta_to_R(planar), std::invalid_argument);

  ThetaSpec bad_degree;
  bad_degree.m = 3;
  bad_degree.theta[{0, 1}] = parse("x1^3", {"x1"});
  bad_degree.f[{0, 1}] = ExprForm::differential(0).scaled(Expr::integer(1));
  CHECK_THROWS_AS(theta_to_R(bad_degree), std::invalid_argument);

  ThetaSpec ok;
  ok.m = 3;
  ok.theta[{0, 1}] = parse("x1^3", {"x1"});
  ok.f[{0, 1}] = ExprForm::function(parse("x1*y1", {"x1", "y1"}));
  CHECK(theta_boundary_check(ok).empty());
  ok.f[{1, 2}] = ExprForm::function(parse("y1 + x1", {"x1", "y1"}));
  auto v = theta_boundary_check(ok);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "f_23(0, y) != 0");
}

TEST_CASE("system shape by function count") {
  SystemShape s2 = system_shape(2);
  CHECK(s2.equations == 1);
  CHECK(s2.unknowns == 1);
  CHECK(s2.constraints == 0);
  SystemShape s3 = system_shape(3);
  CHECK(s3.equations == 9);
  CHECK(s3.unknowns == 3);
  CHECK(s3.constraints == 3);
  SystemShape s4 = system_shape(4);
  CHECK(s4.equations == 36);
  CHECK(s4.unknowns == 6);
  CHECK(s4.constraints == 24);
}

TEST_CASE("structure triple: algebra and frozen flat form") {
  HeavenlySpec flat = make_spec(2, {"0", "0"});
  ParaComplexTriple pt = para_complex_triple(flat);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      int Iij = (i == j) ? (i < 2 ? 1 : -1) : 0;
      int Kij = (i + 2 == j || j + 2 == i) ? -1 : 0;
      int Jij = 0;
      if (i + 2 == j) Jij = -1;   // top-right -Id
      if (j + 2 == i) Jij = 1;    // bottom-left Id
      CHECK(expr_zero(pt.I.at(i, j) - Expr::integer(Iij), 2));
      CHECK(expr_zero(pt.K.at(i, j) - Expr::integer(Kij), 2));
      CHECK(expr_zero(pt.J.at(i, j) - Expr::integer(Jij), 2));
    }

  std::mt19937_64 rng(5150);
  for (size_t m : {size_t(2), size_t(3)}) {
    std::vector<std::string> vars = CoordSystem::split(m).all();
    HeavenlySpec spec;
    spec.m = m;
    for (size_t i = 0; i < m; ++i) spec.R.push_back(random_poly(rng, vars, 3));
    ParaComplexTriple pt2 = para_complex_triple(spec);
    ExprMatrix Id = ExprMatrix::identity(2 * m);
    auto mat_zero = [&](const ExprMatrix& M) {
      for (size_t a = 0; a < 2 * m; ++a)
        for (size_t b = 0; b < 2 * m; ++b)
          if (!is_zero_exact(M.at(a, b), vars)) return false;
      return true;
    };
    CHECK(mat_zero(pt2.I * pt2.I - Id));
    CHECK(mat_zero(pt2.K * pt2.K - Id));
    CHECK(mat_zero(pt2.J * pt2.J + Id));
    CHECK(mat_zero(pt2.I * pt2.K + pt2.K * pt2.I));
  }
}

TEST_CASE("structure triple exchanges the spectral distributions") {
  std::mt19937_64 rng(6001);
  size_t m = 2;
  std::vector<std::string> vars = CoordSystem::split(m).all();
  HeavenlySpec spec;
  spec.m = m;
  for (size_t i = 0; i < m; ++i) spec.R.push_back(random_poly(rng, vars, 3));
  ParaComplexTriple pt = para_complex_triple(spec);
  CoordSystem cs = spec.coords();

  // v_i(t) = dx_i + t e_i with e_i = dy_i + sum_j dx_i R^j dx_j
  auto member = [&](size_t i, const Expr& t) {
    std::vector<Expr> v(2 * m, Expr::integer(0));
    v[i] = Expr::integer(1);
    v[m + i] = t;
    for (size_t j = 0; j < m; ++j) v[j] = v[j] + t * spec.R[j].diff(cs.x[i]);
    return v;
  };
  auto apply = [&](const ExprMatrix& M, const std::vector<Expr>& v) {
    std::vector<Expr> out(2 * m, Expr::integer(0));
    for (size_t a = 0; a < 2 * m; ++a)
      for (size_t b = 0; b < 2 * m; ++b) out[a] = out[a] + M.at(a, b) * v[b];
    return out;
  };
  auto same = [&](const std::vector<Expr>& u, const std::vector<Expr>& w) {
    for (size_t a = 0; a < 2 * m; ++a)
      if (!is_zero_exact(u[a] - w[a], vars)) return false;
    return true;
  };

  Expr two = Expr::integer(2);
  Expr half = Expr::constant(rational(1, 2));
  Expr neg_half = Expr::constant(rational(-1, 2));
  for (size_t i = 0; i < m; ++i) {
    // I swaps V_t with V_{-t}; K and J send V_t to V_{1/t} and V_{-1/t}.
    CHECK(same(apply(pt.I, member(i, two)), member(i, -two)));
    auto Kv = apply(pt.K, member(i, two));
    auto expect = member(i, half);
    for (auto& e : expect) e = e * -two;
    CHECK(same(Kv, expect));
    auto Jv = apply(pt.J, member(i, two));
    auto expect2 = member(i, neg_half);
    for (auto& e : expect2) e = e * -two;
    CHECK(same(Jv, expect2));
  }
}
