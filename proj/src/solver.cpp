#include "webgeom/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "webgeom/heavenly.hpp"
#include "webgeom/sampling.hpp"
#include "webgeom/vector_field.hpp"
#include "webgeom/web.hpp"

namespace webgeom {

namespace {

const std::vector<std::string>& plane_vars() {
  static const std::vector<std::string> vars{"x1", "x2", "y1", "y2"};
  return vars;
}

// All degree-d monomials in (x1, x2, y1, y2), lexicographic in exponents.
std::vector<Monomial> monomials_of_degree(int d) {
  std::vector<Monomial> out;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b)
      for (int c = d - a - b; c >= 0; --c) {
        int e = d - a - b - c;
        Monomial mono;
        if (a) mono["x1"] = a;
        if (b) mono["x2"] = b;
        if (c) mono["y1"] = c;
        if (e) mono["y2"] = e;
        out.push_back(mono);
      }
  return out;
}

std::string monomial_name(const Monomial& mono) {
  if (mono.empty()) return "1";
  std::string out;
  for (const auto& [var, e] : mono) {
    if (!out.empty()) out += "*";
    out += var;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

Poly monomial_poly(const Monomial& mono) {
  Poly p = Poly::constant(rational(1, 1));
  for (const auto& [var, e] : mono)
    for (int k = 0; k < e; ++k) p = p * Poly::variable(var);
  return p;
}

using QMatrix = std::vector<std::vector<Rational>>;

// Min-norm solution of A x = b over the rationals via the normal system
// A A^T z = b, x = A^T z.  Returns feasibility; fills rank and x.
bool min_norm_solve(const QMatrix& A, const std::vector<Rational>& b, std::vector<Rational>& x,
                    size_t& rank, std::vector<size_t>& bad_rows) {
  size_t rows = A.size();
  size_t cols = rows == 0 ? 0 : A[0].size();
  QMatrix M(rows, std::vector<Rational>(rows, Rational(0)));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = i; j < rows; ++j) {
      Rational s(0);
      for (size_t k = 0; k < cols; ++k) s += A[i][k] * A[j][k];
      M[i][j] = s;
      M[j][i] = s;
    }
  std::vector<Rational> rhs = b;
  std::vector<size_t> row_label(rows);
  for (size_t i = 0; i < rows; ++i) row_label[i] = i;

  size_t r = 0;
  rank = 0;
  for (size_t col = 0; col < rows && r < rows; ++col) {
    size_t pivot = r;
    while (pivot < rows && M[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(M[pivot], M[r]);
    std::swap(rhs[pivot], rhs[r]);
    std::swap(row_label[pivot], row_label[r]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || M[i][col] == 0) continue;
      Rational f = M[i][col] / M[r][col];
      for (size_t j = col; j < rows; ++j) M[i][j] -= f * M[r][j];
      rhs[i] -= f * rhs[r];
    }
    ++r;
    ++rank;
  }
  bool feasible = true;
  for (size_t i = r; i < rows; ++i)
    if (rhs[i] != 0) {
      feasible = false;
      bad_rows.push_back(row_label[i]);
    }
  if (!feasible) return false;

  // back out z: the elimination zeroed each pivot column everywhere else,
  // so pivot row rr determines z[col]; pivot-free entries stay zero.
  std::vector<Rational> z(rows, Rational(0));
  size_t rr = 0;
  for (size_t col = 0; col < rows && rr < rows; ++col) {
    if (M[rr][col] == 0) continue;
    z[col] = rhs[rr] / M[rr][col];
    ++rr;
  }
  x.assign(cols, Rational(0));
  for (size_t k = 0; k < cols; ++k) {
    Rational s(0);
    for (size_t i = 0; i < rows; ++i) s += A[i][k] * z[i];
    x[k] = s;
  }
  return true;
}

}  // namespace

Poly heavenly_residual_poly(const Poly& theta) {
  Poly t11 = theta.diff("x1").diff("x1");
  Poly t22 = theta.diff("x2").diff("x2");
  Poly t12 = theta.diff("x1").diff("x2");
  return t11 * t22 - t12 * t12 - theta.diff("x2").diff("y1") + theta.diff("x1").diff("y2");
}

JetSolution jet_solve(const Poly& seed, int D) {
  if (D < 3) throw std::invalid_argument("target degree must be at least 3");
  if (!seed.is_zero() && seed.total_degree() > 3)
    throw std::invalid_argument("seed degree must be at most 3");
  Poly seed_res = heavenly_residual_poly(seed);
  for (int d = 0; d <= 1; ++d)
    if (!seed_res.homogeneous_part(d).is_zero())
      throw std::invalid_argument("seed residual survives at degree " + std::to_string(d));

  // constant second-derivative block of the degree-2 seed part
  Poly q = seed.homogeneous_part(2);
  Rational q11 = q.diff("x1").diff("x1").coefficient({});
  Rational q22 = q.diff("x2").diff("x2").coefficient({});
  Rational q12 = q.diff("x1").diff("x2").coefficient({});

  auto level_operator = [&](const Poly& mu) {
    return mu.diff("x2").diff("x2").scaled(q11) + mu.diff("x1").diff("x1").scaled(q22) -
           mu.diff("x1").diff("x2").scaled(q12 + q12) - mu.diff("x2").diff("y1") +
           mu.diff("x1").diff("y2");
  };

  JetSolution sol;
  sol.D = D;
  sol.seed = seed;
  sol.theta = seed;

  for (int d = 2; d <= D - 2; ++d) {
    std::vector<Monomial> eq_monos = monomials_of_degree(d);
    std::vector<Monomial> unknowns = monomials_of_degree(d + 2);
    std::map<Monomial, size_t> eq_index;
    for (size_t i = 0; i < eq_monos.size(); ++i) eq_index[eq_monos[i]] = i;

    QMatrix A(eq_monos.size(), std::vector<Rational>(unknowns.size(), Rational(0)));
    for (size_t c = 0; c < unknowns.size(); ++c) {
      Poly col = level_operator(monomial_poly(unknowns[c]));
      for (const auto& [mono, coeff] : col.terms()) A[eq_index.at(mono)][c] = coeff;
    }

    Poly known = heavenly_residual_poly(sol.theta).homogeneous_part(d);
    std::vector<Rational> b(eq_monos.size(), Rational(0));
    for (const auto& [mono, coeff] : known.terms()) b[eq_index.at(mono)] = -coeff;

    LevelReport report;
    report.level = d;
    report.equations = eq_monos.size();
    report.unknowns = unknowns.size();
    std::vector<Rational> x;
    std::vector<size_t> bad;
    report.feasible = min_norm_solve(A, b, x, report.rank, bad);
    report.unique = report.rank == report.unknowns;
    if (!report.feasible) {
      for (size_t i : bad) report.inconsistent.push_back(monomial_name(eq_monos[i]));
      sol.levels.push_back(report);
      std::string what = "level " + std::to_string(d) + " is infeasible at:";
      for (const auto& s : report.inconsistent) what += " " + s;
      throw std::runtime_error(what);
    }
    Poly part;
    for (size_t c = 0; c < unknowns.size(); ++c)
      if (x[c] != 0) part.set_coefficient(unknowns[c], x[c]);
    sol.theta = sol.theta + part;
    sol.levels.push_back(report);
  }

  sol.residual = heavenly_residual_poly(sol.theta);
  for (int d = 0; d <= D - 2; ++d)
    if (!sol.residual.homogeneous_part(d).is_zero())
      throw std::runtime_error("postcondition failed: residual survives at degree " +
                               std::to_string(d));
  return sol;
}

Certificate certify(const JetSolution& sol) {
  Certificate cert;
  cert.D = sol.D;

  Poly res = heavenly_residual_poly(sol.theta);
  cert.residual_exact_zero = res.is_zero();
  cert.residual_lowest_degree = res.lowest_degree();
  cert.clause_a = cert.residual_exact_zero || cert.residual_lowest_degree >= sol.D - 1;
  if (!cert.clause_a) {
    Poly lowest = res.homogeneous_part(cert.residual_lowest_degree);
    const auto& [mono, coeff] = *lowest.terms().begin();
    cert.witness = to_string(coeff) + "*" + monomial_name(mono);
  }

  // R = (theta_x2, -theta_x1); first-order residual in exact arithmetic
  Poly R1 = sol.theta.diff("x2");
  Poly R2 = -sol.theta.diff("x1");
  std::vector<Poly> R{R1, R2};
  std::vector<std::string> xs{"x1", "x2"}, ys{"y1", "y2"};
  int eq1_lowest = -1;
  for (size_t k = 0; k < 2; ++k) {
    Poly r = -R[k].diff("x1").diff("y2") + R[k].diff("x2").diff("y1");
    for (size_t l = 0; l < 2; ++l)
      r = r + R[l].diff("x1") * R[k].diff(xs[l]).diff("x2") -
          R[l].diff("x2") * R[k].diff(xs[l]).diff("x1");
    int low = r.lowest_degree();
    if (low >= 0 && (eq1_lowest < 0 || low < eq1_lowest)) eq1_lowest = low;
  }
  cert.eq1_exact_zero = eq1_lowest < 0;
  cert.eq1_lowest_degree = eq1_lowest;
  cert.clause_b = cert.eq1_exact_zero || eq1_lowest >= sol.D - 2;

  // commutators of the spectral fields at t = 1, 2, 3, truncated to the
  // order the previous clause certifies
  HeavenlySpec hs;
  hs.m = 2;
  hs.R = {R1.to_expr(), R2.to_expr()};
  int lax_lowest = -1;
  double max_abs = 0.0;
  for (long tv : {1L, 2L, 3L}) {
    for (const auto& comm : lax_commutators(hs, Expr::integer(tv)))
      for (const Expr& comp : comm) {
        auto p = poly_from_expr(comp);
        if (!p) throw std::runtime_error("commutator component is not polynomial");
        int low = p->lowest_degree();
        if (low >= 0 && (lax_lowest < 0 || low < lax_lowest)) lax_lowest = low;
        Poly trunc = p->truncated(sol.D - 3);
        for (const auto& [mono, coeff] : trunc.terms()) {
          (void)mono;
          max_abs = std::max(max_abs, std::fabs(to_double(coeff)));
        }
      }
  }
  cert.lax_lowest_degree = lax_lowest;
  cert.lax_truncated_max_abs = max_abs;
  cert.clause_c = max_abs == 0.0 && lax_lowest == eq1_lowest;

  PotentialCurvature pc = curvature_from_R(hs);
  cert.clause_d = true;
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      auto p = poly_from_expr(pc.ricci_trace.at(i, j));
      if (!p || !p->is_zero()) cert.clause_d = false;
    }

  // frame-level torsion of the induced structure, only decidable when the
  // residual vanishes identically
  cert.clause_e_applicable = cert.residual_exact_zero;
  if (cert.clause_e_applicable) {
    FrameTriple ft = frames_from_potentials(2, hs.R);
    FrameConnection fc = frames_connection(ft);
    Sampler sampler(24680);
    double worst = 0.0;
    for (const Point& p : sampler.admissible_points(10, plane_vars(), {})) {
      for (size_t a = 0; a < 4; ++a)
        for (size_t b = 0; b < 4; ++b)
          for (size_t c = 0; c < 4; ++c) {
            double tors = fc.gamma[a][b][c].eval_double(p) - fc.gamma[b][a][c].eval_double(p);
            worst = std::max(worst, std::fabs(tors));
          }
    }
    cert.frames_torsion_max_abs = worst;
    cert.clause_e = worst < 1e-8;
  }
  return cert;
}

}  // namespace webgeom
