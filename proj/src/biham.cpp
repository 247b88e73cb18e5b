#include "webgeom/biham.hpp"

#include <cmath>
#include <stdexcept>

namespace webgeom {

Bivector pencil_bivector(const HeavenlySpec& spec, const Expr& t) {
  size_t m = spec.m;
  CoordSystem cs = spec.coords();
  Bivector P;
  P.coords = cs.all();
  for (size_t i = 0; i < m; ++i) P.coords.push_back("p" + std::to_string(i + 1));
  size_t n = 3 * m;
  P.comp = ExprMatrix(n, n);
  std::vector<std::vector<Expr>> L = lax_fields(spec, t);
  for (size_t i = 0; i < m; ++i)
    for (size_t a = 0; a < 2 * m; ++a) {
      P.comp.at(a, 2 * m + i) = L[i][a];
      P.comp.at(2 * m + i, a) = -L[i][a];
    }
  return P;
}

Expr poisson_bracket(const Bivector& P, const Expr& f, const Expr& g) {
  size_t n = P.coords.size();
  Expr out = Expr::integer(0);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      out = out + P.comp.at(a, b) * f.diff(P.coords[a]) * g.diff(P.coords[b]);
  return out;
}

std::vector<std::vector<std::vector<Expr>>> schouten_bracket(const Bivector& P,
                                                             const Bivector& Q) {
  if (P.coords != Q.coords)
    throw std::invalid_argument("schouten bracket: coordinate lists differ");
  size_t n = P.coords.size();
  std::vector<std::vector<std::vector<Expr>>> out(
      n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n, Expr::integer(0))));
  auto term = [&](size_t a, size_t b, size_t c) {
    Expr s = Expr::integer(0);
    for (size_t d = 0; d < n; ++d)
      s = s + P.comp.at(d, a) * Q.comp.at(b, c).diff(P.coords[d]) +
          Q.comp.at(d, a) * P.comp.at(b, c).diff(P.coords[d]);
    return s;
  };
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t c = 0; c < n; ++c)
        out[a][b][c] = term(a, b, c) + term(b, c, a) + term(c, a, b);
  return out;
}

size_t numeric_rank(const Bivector& P, const Point& p, double tol) {
  size_t n = P.coords.size();
  std::vector<std::vector<double>> M(n, std::vector<double>(n, 0.0));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) M[a][b] = P.comp.at(a, b).eval_double(p);
  size_t rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < n && row < n; ++col) {
    size_t pivot = row;
    for (size_t r = row + 1; r < n; ++r)
      if (std::fabs(M[r][col]) > std::fabs(M[pivot][col])) pivot = r;
    if (std::fabs(M[pivot][col]) <= tol) continue;
    std::swap(M[pivot], M[row]);
    for (size_t r = row + 1; r < n; ++r) {
      double f = M[r][col] / M[row][col];
      for (size_t c = col; c < n; ++c) M[r][c] -= f * M[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

size_t kronecker_rank(const HeavenlySpec& spec, const Expr& t, const Point& p, double tol) {
  return numeric_rank(pencil_bivector(spec, t), p, tol);
}

}  // namespace webgeom
