#include "webgeom/web.hpp"

#include <cmath>
#include <stdexcept>

#include "webgeom/polynomial.hpp"
#include "webgeom/vector_field.hpp"

namespace webgeom {

namespace {

ExprMatrix jacobian(const std::vector<Expr>& w, const std::vector<std::string>& vars) {
  ExprMatrix out(w.size(), vars.size());
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = 0; j < vars.size(); ++j) out.at(i, j) = w[i].diff(vars[j]);
  return out;
}

double eval_abs(const Expr& e, const Point& p) { return std::fabs(e.eval_double(p)); }

}  // namespace

std::vector<Point> web_sample_points(const WebSpec& spec, int count) {
  CoordSystem cs = spec.coords();
  ExprMatrix Wx = jacobian(spec.w, cs.x);
  ExprMatrix Wy = jacobian(spec.w, cs.y);
  std::vector<Expr> guards{determinant(Wx), determinant(Wy)};
  if (!spec.samples.empty()) {
    for (const Point& p : spec.samples)
      for (const Expr& g : guards)
        if (eval_abs(g, p) < 1e-12)
          throw std::runtime_error("web spec: Jacobian singular at a declared sample point");
    return spec.samples;
  }
  Sampler s(spec.seed);
  return s.admissible_points(count, cs.all(), guards);
}

WebMatrices web_matrices(const WebSpec& spec) {
  if (spec.w.size() != spec.m) throw std::invalid_argument("web spec: needs exactly m expressions");
  CoordSystem cs = spec.coords();
  WebMatrices out;
  out.Wx = jacobian(spec.w, cs.x);
  out.Wy = jacobian(spec.w, cs.y);
  auto [dx, adjx] = det_and_adjugate(out.Wx);
  auto [dy, adjy] = det_and_adjugate(out.Wy);
  out.detWx = dx;
  out.detWy = dy;
  ExprMatrix Wyinv = adjy.map([&](const Expr& e) { return e / dy; });
  ExprMatrix Wxinv = adjx.map([&](const Expr& e) { return e / dx; });
  out.C = out.Wx * Wyinv;
  out.Cinv = out.Wy * Wxinv;
  out.E = Wyinv * out.Wx;
  out.Einv = Wxinv * out.Wy;
  out.detC = dx / dy;
  web_sample_points(spec);  // validates invertibility at declared samples
  return out;
}

Expr ConnectionData::gamma(size_t a, size_t b, size_t c) const {
  bool ax = a < m, bx = b < m, cx = c < m;
  if (ax && bx && cx) return Gxx[a][b][c];
  if (!ax && !bx && !cx) return Gyy[a - m][b - m][c - m];
  return Expr::integer(0);
}

namespace {

using Tensor3 = std::vector<std::vector<std::vector<Expr>>>;

Tensor3 zero3(size_t m) {
  return Tensor3(m, std::vector<std::vector<Expr>>(m, std::vector<Expr>(m, Expr::integer(0))));
}

// The frame v_j = dx_j - sum_k E[k][j] dy_k of the third foliation must stay
// parallel; spelled out on coefficients this pins both Christoffel blocks.
void assert_third_foliation_parallel(const ConnectionData& cd, const std::vector<Point>& pts,
                                     const CoordSystem& cs) {
  size_t m = cd.m;
  const ExprMatrix& E = cd.mats.E;
  for (const Point& p : pts) {
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) {
        for (size_t k = 0; k < m; ++k) {
          Expr h = E.at(k, j).diff(cs.x[i]);
          for (size_t s = 0; s < m; ++s) h = h - E.at(k, s) * cd.Gxx[i][j][s];
          if (eval_abs(h, p) > 1e-8)
            throw std::runtime_error("connection does not parallelize the third foliation "
                                     "(horizontal check failed at a sample point)");
          Expr v = E.at(k, j).diff(cs.y[i]);
          for (size_t s = 0; s < m; ++s) v = v + cd.Gyy[i][s][k] * E.at(s, j);
          if (eval_abs(v, p) > 1e-8)
            throw std::runtime_error("connection does not parallelize the third foliation "
                                     "(vertical check failed at a sample point)");
        }
      }
  }
}

}  // namespace

ConnectionData chern_connection(const WebSpec& spec) {
  CoordSystem cs = spec.coords();
  ConnectionData cd;
  cd.m = spec.m;
  cd.mats = web_matrices(spec);
  cd.Gxx = zero3(spec.m);
  cd.Gyy = zero3(spec.m);
  for (size_t i = 0; i < spec.m; ++i) {
    ExprMatrix dEx = cd.mats.E.diff(cs.x[i]);
    ExprMatrix dEy = cd.mats.E.diff(cs.y[i]);
    ExprMatrix gx = cd.mats.Einv * dEx;      // Gxx[i][j][t] = gx[t][j]
    ExprMatrix gy = dEy * cd.mats.Einv;      // Gyy[i][j][t] = -gy[t][j]
    for (size_t j = 0; j < spec.m; ++j)
      for (size_t t = 0; t < spec.m; ++t) {
        cd.Gxx[i][j][t] = gx.at(t, j);
        cd.Gyy[i][j][t] = -gy.at(t, j);
      }
  }
  assert_third_foliation_parallel(cd, web_sample_points(spec), cs);
  return cd;
}

TorsionData torsion(const WebSpec& spec) {
  ConnectionData cd = chern_connection(spec);
  TorsionData out;
  out.Txx = zero3(spec.m);
  out.Tyy = zero3(spec.m);
  for (size_t i = 0; i < spec.m; ++i)
    for (size_t j = 0; j < spec.m; ++j)
      for (size_t t = 0; t < spec.m; ++t) {
        out.Txx[i][j][t] = cd.Gxx[i][j][t] - cd.Gxx[j][i][t];
        out.Tyy[i][j][t] = cd.Gyy[i][j][t] - cd.Gyy[j][i][t];
      }
  if (spec.m == 2) {
    CoordSystem cs = spec.coords();
    Expr dWx = cd.mats.detWx, dWy = cd.mats.detWy;
    for (size_t i = 0; i < 2; ++i) {
      const Expr& wi = spec.w[i];
      out.hirota.push_back(wi.diff("x1") * dWy.diff("x2") - wi.diff("x2") * dWy.diff("x1") -
                           wi.diff("y1") * dWx.diff("y2") + wi.diff("y2") * dWx.diff("y1"));
    }
  }
  return out;
}

TorsionData torsion_and_hirota(const WebSpec& spec) {
  if (spec.m != 2)
    throw std::invalid_argument("the Hirota residual is defined for m = 2 webs only");
  return torsion(spec);
}

bool torsion_is_zero(const TorsionData& t, const WebSpec& spec) {
  std::vector<std::string> vars = spec.coords().all();
  for (const auto& block : {t.Txx, t.Tyy})
    for (const auto& plane : block)
      for (const auto& row : plane)
        for (const Expr& e : row)
          if (!is_zero_exact(e, vars, spec.seed)) return false;
  return true;
}

CurvatureData curvature(const WebSpec& spec) {
  ConnectionData cd = chern_connection(spec);
  CoordSystem cs = spec.coords();
  std::vector<std::string> coords = cs.all();
  size_t n = coords.size();

  CurvatureData out;
  out.m = spec.m;
  out.riemann.assign(n, std::vector<std::vector<std::vector<Expr>>>(
                            n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n))));
  for (size_t d = 0; d < n; ++d)
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        for (size_t c = 0; c < n; ++c) {
          Expr r = cd.gamma(b, c, d).diff(coords[a]) - cd.gamma(a, c, d).diff(coords[b]);
          for (size_t e = 0; e < n; ++e)
            r = r + cd.gamma(a, e, d) * cd.gamma(b, c, e) -
                cd.gamma(b, e, d) * cd.gamma(a, c, e);
          out.riemann[d][a][b][c] = r;
        }

  out.ricci = ExprMatrix(n, n);
  for (size_t b = 0; b < n; ++b)
    for (size_t c = 0; c < n; ++c) {
      Expr s = Expr::integer(0);
      for (size_t a = 0; a < n; ++a) s = s + out.riemann[a][a][b][c];
      out.ricci.at(b, c) = s;
    }

  out.ricci_closed = ExprMatrix(spec.m, spec.m);
  Expr detC = cd.mats.detC;
  for (size_t i = 0; i < spec.m; ++i) {
    Expr ratio = detC.diff(cs.x[i]) / detC;
    for (size_t j = 0; j < spec.m; ++j) out.ricci_closed.at(i, j) = ratio.diff(cs.y[j]);
  }
  return out;
}

std::string tri_state_name(TriState t) {
  switch (t) {
    case TriState::True: return "true";
    case TriState::False: return "false";
    case TriState::NotApplicable: return "not_applicable";
  }
  return "?";
}

ConformalData conformal_data(const WebSpec& spec) {
  if (spec.m != 2) throw std::invalid_argument("conformal data is defined for m = 2 webs only");
  CoordSystem cs = spec.coords();
  WebMatrices mats = web_matrices(spec);

  // Covectors over (dx1, dx2, dy1, dy2): the split differentials of w_i.
  auto xpart = [&](size_t i) {
    return std::vector<Expr>{spec.w[i].diff("x1"), spec.w[i].diff("x2"), Expr::integer(0),
                             Expr::integer(0)};
  };
  auto ypart = [&](size_t i) {
    return std::vector<Expr>{Expr::integer(0), Expr::integer(0), spec.w[i].diff("y1"),
                             spec.w[i].diff("y2")};
  };
  std::vector<Expr> o11 = xpart(0), o12 = ypart(0), o21 = xpart(1), o22 = ypart(1);

  ConformalData out;
  out.g = ExprMatrix(4, 4);
  Expr half = Expr::constant(rational(1, 2));
  for (size_t a = 0; a < 4; ++a)
    for (size_t b = 0; b < 4; ++b)
      out.g.at(a, b) = half * (o11[a] * o22[b] + o11[b] * o22[a]) -
                       half * (o12[a] * o21[b] + o12[b] * o21[a]);

  for (size_t s = 0; s < 2; ++s) {
    out.A = out.A +
            ExprForm::differential(s).scaled(mats.detWy.diff(cs.x[s]) / mats.detWy) +
            ExprForm::differential(2 + s).scaled(mats.detWx.diff(cs.y[s]) / mats.detWx);
  }
  out.dA = exterior_derivative(out.A, cs);

  TorsionData tor = torsion(spec);
  if (!torsion_is_zero(tor, spec)) {
    out.hyper_kahler = TriState::NotApplicable;
  } else {
    bool flat = true;
    for (const auto& [idx, c] : out.dA.terms())
      if (!is_zero_exact(c, cs.all(), spec.seed)) flat = false;
    out.hyper_kahler = flat ? TriState::True : TriState::False;
  }
  return out;
}

double weyl_residual(const WebSpec& spec, const ConnectionData& conn, const ConformalData& cd) {
  CoordSystem cs = spec.coords();
  std::vector<std::string> coords = cs.all();
  size_t n = coords.size();
  std::vector<Point> pts = web_sample_points(spec);
  double worst = 0.0;
  for (size_t a = 0; a < n; ++a) {
    Expr Aa = cd.A.coefficient({static_cast<int>(a)});
    for (size_t b = 0; b < n; ++b)
      for (size_t c = 0; c < n; ++c) {
        Expr r = cd.g.at(b, c).diff(coords[a]) - Aa * cd.g.at(b, c);
        for (size_t e = 0; e < n; ++e)
          r = r - conn.gamma(a, b, e) * cd.g.at(e, c) - conn.gamma(a, c, e) * cd.g.at(b, e);
        for (const Point& p : pts) worst = std::max(worst, eval_abs(r, p));
      }
  }
  return worst;
}

FrameTriple frames_from_web(const WebSpec& spec) {
  WebMatrices mats = web_matrices(spec);
  size_t m = spec.m;
  FrameTriple ft;
  ft.m = m;
  auto basis = [&](size_t idx) {
    std::vector<Expr> v(2 * m, Expr::integer(0));
    v[idx] = Expr::integer(1);
    return v;
  };
  for (size_t i = 0; i < m; ++i) ft.f1.push_back(basis(m + i));  // dy_i
  for (size_t i = 0; i < m; ++i) ft.f2.push_back(basis(i));      // dx_i
  // Tangent frame of {w = const}, cleared of denominators (the connection is
  // invariant under rescaling frame vectors): det(Wy) dx_j - (adj(Wy) Wx) dy.
  auto [detWy, adjWy] = det_and_adjugate(mats.Wy);
  ExprMatrix N = adjWy * mats.Wx;  // = detWy * E
  for (size_t j = 0; j < m; ++j) {
    std::vector<Expr> v(2 * m, Expr::integer(0));
    v[j] = detWy;
    for (size_t k = 0; k < m; ++k) v[m + k] = -N.at(k, j);
    ft.f3.push_back(v);
  }
  return ft;
}

FrameTriple frames_from_potentials(size_t m, const std::vector<Expr>& R) {
  if (R.size() != m) throw std::invalid_argument("needs exactly m potential expressions");
  CoordSystem cs = CoordSystem::split(m);
  FrameTriple ft;
  ft.m = m;
  for (size_t i = 0; i < m; ++i) {
    std::vector<Expr> dx(2 * m, Expr::integer(0));
    dx[i] = Expr::integer(1);
    std::vector<Expr> e(2 * m, Expr::integer(0));
    e[m + i] = Expr::integer(1);
    for (size_t j = 0; j < m; ++j) e[j] = R[j].diff(cs.x[i]);
    std::vector<Expr> sum(2 * m);
    for (size_t a = 0; a < 2 * m; ++a) sum[a] = dx[a] + e[a];
    ft.f1.push_back(dx);
    ft.f2.push_back(e);
    ft.f3.push_back(sum);
  }
  return ft;
}

namespace {

ExprMatrix columns(const std::vector<std::vector<Expr>>& vs) {
  size_t n = vs[0].size();
  ExprMatrix out(n, vs.size());
  for (size_t j = 0; j < vs.size(); ++j)
    for (size_t i = 0; i < n; ++i) out.at(i, j) = vs[j][i];
  return out;
}

std::vector<Expr> matvec(const ExprMatrix& M, const std::vector<Expr>& v) {
  std::vector<Expr> out(M.rows(), Expr::integer(0));
  for (size_t i = 0; i < M.rows(); ++i) {
    Expr s = Expr::integer(0);
    for (size_t j = 0; j < M.cols(); ++j) s = s + M.at(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

std::vector<Expr> column_of(const ExprMatrix& M, size_t j) {
  std::vector<Expr> out(M.rows(), Expr::integer(0));
  for (size_t i = 0; i < M.rows(); ++i) out[i] = M.at(i, j);
  return out;
}

// j(src_i) solves [target | -f3] (alpha; beta) = src_i with j(src_i) =
// target * alpha: the unique vector in span(target) congruent to src_i
// modulo the third frame.
ExprMatrix exchange_images(const ExprMatrix& target, const ExprMatrix& f3,
                           const ExprMatrix& src) {
  size_t n = target.rows();
  size_t m = target.cols();
  ExprMatrix M(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) M.at(i, j) = target.at(i, j);
    for (size_t j = 0; j < m; ++j) M.at(i, m + j) = -f3.at(i, j);
  }
  ExprMatrix Minv = inverse(M);
  ExprMatrix out(n, src.cols());
  for (size_t c = 0; c < src.cols(); ++c) {
    std::vector<Expr> alpha_beta = matvec(Minv, column_of(src, c));
    std::vector<Expr> alpha(alpha_beta.begin(), alpha_beta.begin() + m);
    std::vector<Expr> img = matvec(target, alpha);
    for (size_t i = 0; i < n; ++i) out.at(i, c) = img[i];
  }
  return out;
}

}  // namespace

FrameConnection frames_connection(const FrameTriple& ft) {
  size_t m = ft.m;
  size_t n = 2 * m;
  CoordSystem cs = CoordSystem::split(m);
  std::vector<std::string> coords = cs.all();

  ExprMatrix F1 = columns(ft.f1), F2 = columns(ft.f2), F3 = columns(ft.f3);
  ExprMatrix P(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) P.at(i, j) = F2.at(i, j);
    for (size_t j = 0; j < m; ++j) P.at(i, m + j) = F1.at(i, j);
  }
  ExprMatrix Pinv = inverse(P);
  ExprMatrix Dh(n, n), Dv(n, n);
  for (size_t i = 0; i < m; ++i) Dh.at(i, i) = Expr::integer(1);
  for (size_t i = m; i < n; ++i) Dv.at(i, i) = Expr::integer(1);
  ExprMatrix Ph = P * Dh * Pinv;  // projection onto span(f2) along span(f1)
  ExprMatrix Pv = P * Dv * Pinv;  // projection onto span(f1) along span(f2)

  // The frame-exchange endomorphism: span(f2) -> span(f1) and back, both
  // congruences modulo span(f3).
  ExprMatrix Jh = exchange_images(F1, F3, F2);
  ExprMatrix Jv = exchange_images(F2, F3, F1);
  ExprMatrix JP(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) JP.at(i, j) = Jh.at(i, j);
    for (size_t j = 0; j < m; ++j) JP.at(i, m + j) = Jv.at(i, j);
  }
  ExprMatrix J = JP * Pinv;

  FrameConnection out;
  out.m = m;
  out.gamma.assign(n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n, Expr::integer(0))));
  for (size_t a = 0; a < n; ++a) {
    std::vector<Expr> Xh = column_of(Ph, a), Xv = column_of(Pv, a);
    for (size_t b = 0; b < n; ++b) {
      std::vector<Expr> Yh = column_of(Ph, b), Yv = column_of(Pv, b);
      std::vector<Expr> jYh = matvec(J, Yh), jYv = matvec(J, Yv);
      std::vector<Expr> h = matvec(J, vf_bracket(Xh, jYh, coords));
      std::vector<Expr> h2 = vf_bracket(Xv, Yh, coords);
      std::vector<Expr> v = matvec(J, vf_bracket(Xv, jYv, coords));
      std::vector<Expr> v2 = vf_bracket(Xh, Yv, coords);
      for (size_t i = 0; i < n; ++i) {
        h[i] = h[i] + h2[i];
        v[i] = v[i] + v2[i];
      }
      std::vector<Expr> outh = matvec(Ph, h), outv = matvec(Pv, v);
      for (size_t c = 0; c < n; ++c) out.gamma[a][b][c] = outh[c] + outv[c];
    }
  }
  return out;
}

std::vector<std::vector<std::vector<double>>> chern_from_frames(const FrameTriple& ft,
                                                                const Point& p) {
  FrameConnection fc = frames_connection(ft);
  size_t n = 2 * ft.m;
  std::vector<std::vector<std::vector<double>>> out(
      n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t c = 0; c < n; ++c) out[a][b][c] = fc.gamma[a][b][c].eval_double(p);
  return out;
}

}  // namespace webgeom
