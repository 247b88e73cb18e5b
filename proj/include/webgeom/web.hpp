#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "webgeom/exterior.hpp"
#include "webgeom/expr.hpp"
#include "webgeom/sampling.hpp"

namespace webgeom {

// A 3-web on R^{2m} in adapted coordinates: the three foliations are
// {x = const}, {y = const} and the level sets of w = (w_1..w_m).
struct WebSpec {
  size_t m = 0;
  std::vector<Expr> w;        // m expressions in x1..xm, y1..ym
  std::vector<Point> samples; // optional; generated from `seed` when empty
  uint64_t seed = 12345;

  CoordSystem coords() const { return CoordSystem::split(m); }
};

struct WebMatrices {
  ExprMatrix Wx, Wy;     // Wx[i][j] = dw_i/dx_j, Wy[i][j] = dw_i/dy_j
  ExprMatrix C, Cinv;    // C = Wx * Wy^-1
  Expr detWx, detWy, detC;
  // E = Wy^-1 * Wx is the matrix whose columns give the tangent frame
  // v_j = dx_j - sum_k E[k][j] dy_k of the third foliation; it is the
  // combination that the connection below parallelizes.  det E = det C.
  ExprMatrix E, Einv;
};

// Sample points where both Jacobians are invertible (the spec's own points
// when provided, seeded draws otherwise).
std::vector<Point> web_sample_points(const WebSpec& spec, int count = 10);

// Throws std::runtime_error when a Jacobian is singular at a sample point.
WebMatrices web_matrices(const WebSpec& spec);

// Christoffel data of the connection that makes all three foliations
// parallel and has no torsion on mixed horizontal/vertical arguments.  The
// mixed coefficient blocks vanish identically; only the xx and yy blocks are
// stored:  nabla_{dx_i} dx_j = sum_t Gxx[i][j][t] dx_t,
//          nabla_{dy_i} dy_j = sum_t Gyy[i][j][t] dy_t.
struct ConnectionData {
  size_t m = 0;
  WebMatrices mats;
  std::vector<std::vector<std::vector<Expr>>> Gxx, Gyy;

  // Coefficient of coordinate c in nabla_{d_a} d_b over the full 2m frame.
  Expr gamma(size_t a, size_t b, size_t c) const;
};

// Builds the connection and asserts at the sample points that the tangent
// frame of the third foliation is parallel (the property that fixes every
// index convention here).
ConnectionData chern_connection(const WebSpec& spec);

struct TorsionData {
  // Txx[i][j][t] = Gxx[i][j][t] - Gxx[j][i][t]; likewise Tyy.
  std::vector<std::vector<std::vector<Expr>>> Txx, Tyy;
  // m = 2 only: hirota[i] = dx1 w_i * dx2 det Wy - dx2 w_i * dx1 det Wy
  //                       - dy1 w_i * dy2 det Wx + dy2 w_i * dy1 det Wx.
  std::vector<Expr> hirota;
};

// General-m torsion (hirota left empty for m != 2).
TorsionData torsion(const WebSpec& spec);
// m = 2 only; throws std::invalid_argument otherwise.
TorsionData torsion_and_hirota(const WebSpec& spec);

bool torsion_is_zero(const TorsionData& t, const WebSpec& spec);

struct CurvatureData {
  size_t m = 0;
  // riemann[d][a][b][c]: coefficient of d in R(d_a, d_b) d_c.
  std::vector<std::vector<std::vector<std::vector<Expr>>>> riemann;
  ExprMatrix ricci;         // 2m x 2m contraction Ric_{bc} = sum_a R^a_{abc}
  ExprMatrix ricci_closed;  // m x m: entry (i,j) = dy_j( dx_i(det C)/det C )
};

CurvatureData curvature(const WebSpec& spec);

enum class TriState { True, False, NotApplicable };
std::string tri_state_name(TriState t);

// m = 2 conformal package: metric g from the web differentials, the 1-form
// A built from the Jacobian determinants, and dA.
struct ConformalData {
  ExprMatrix g;      // 4x4 symmetric
  ExprForm A;        // 1-form
  ExprForm dA;       // 2-form
  TriState hyper_kahler = TriState::NotApplicable;  // dA == 0 (torsion-free webs only)
};

ConformalData conformal_data(const WebSpec& spec);

// Max-abs of the components of nabla g - A (x) g over the sample points.
double weyl_residual(const WebSpec& spec, const ConnectionData& conn, const ConformalData& cd);

// Three transversal frames (each m vector fields given by 2m coefficients
// over dx1..dxm, dy1..dym).
struct FrameTriple {
  size_t m = 0;
  std::vector<std::vector<Expr>> f1, f2, f3;
};

FrameTriple frames_from_web(const WebSpec& spec);
// f1 = {dx_i}, f2 = {e_i = dy_i + sum_j dx_i R^j dx_j}, f3 = {dx_i + e_i}.
FrameTriple frames_from_potentials(size_t m, const std::vector<Expr>& R);

// Connection action computed purely from the frames via projections, the
// frame-exchange endomorphism and Lie brackets; gamma[a][b][c] is the
// coefficient of d_c in nabla_{d_a} d_b.
struct FrameConnection {
  size_t m = 0;
  std::vector<std::vector<std::vector<Expr>>> gamma;
};

FrameConnection frames_connection(const FrameTriple& ft);

// The pointwise action at p of the frames-based connection (gamma evaluated
// at p, as doubles).
std::vector<std::vector<std::vector<double>>> chern_from_frames(const FrameTriple& ft,
                                                                const Point& p);

}  // namespace webgeom
