#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "webgeom/expr.hpp"

namespace webgeom {

// Coordinates split into a horizontal block x1..xm and a vertical block
// y1..ym.  Differentials are globally ordered dx1 < ... < dxm < dy1 < ... <
// dym; forms index their factors by position in `all()`.
struct CoordSystem {
  std::vector<std::string> x;
  std::vector<std::string> y;

  static CoordSystem split(size_t m, const std::string& xbase = "x",
                           const std::string& ybase = "y");

  size_t dim() const { return x.size() + y.size(); }
  std::vector<std::string> all() const;
  const std::string& coord(size_t i) const;
  std::string differential_name(size_t i) const { return "d" + coord(i); }
  int index_of(const std::string& name) const;  // -1 when absent
};

class ExprMatrix {
 public:
  ExprMatrix() = default;
  ExprMatrix(size_t rows, size_t cols);
  static ExprMatrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Expr& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Expr& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  ExprMatrix transpose() const;
  ExprMatrix map(const std::function<Expr(const Expr&)>& f) const;
  ExprMatrix diff(const std::string& var) const;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Expr> a_;
};

ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b);
ExprMatrix operator-(const ExprMatrix& a, const ExprMatrix& b);
ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b);
ExprMatrix scale(const Expr& c, const ExprMatrix& m);

// Laplace expansion with minors memoised over column masks; intended for the
// small matrices of this library (dimension at most six).  The adjugate
// satisfies adj(M) * M = det(M) * Id by construction.
std::pair<Expr, ExprMatrix> det_and_adjugate(const ExprMatrix& m);
Expr determinant(const ExprMatrix& m);
// Entries adj_ij / det as expressions; exact wherever det is nonzero.
ExprMatrix inverse(const ExprMatrix& m);

// Differentiation range: X and Y differentiate (and emit differentials)
// along the horizontal respectively vertical coordinate block only.
enum class DMode { Full, X, Y };

// Exterior form with expression coefficients.  Terms are keyed by strictly
// increasing index vectors into the coordinate differentials; coefficients
// that fold to the zero constant are pruned.
class ExprForm {
 public:
  ExprForm() = default;  // the zero form
  static ExprForm function(const Expr& f);
  static ExprForm differential(size_t coord_index);
  static ExprForm term(const Expr& coeff, std::vector<int> indices);  // signs unsorted input

  ExprForm operator-() const;
  ExprForm scaled(const Expr& f) const;
  bool empty() const { return terms_.empty(); }
  // Degree of the terms present; -1 for the zero form.
  int degree() const;

  // Coefficient of the (possibly unordered) index tuple, with the sign of
  // the permutation applied; repeated indices give zero.
  Expr coefficient(const std::vector<int>& indices) const;
  const std::map<std::vector<int>, Expr>& terms() const { return terms_; }

 private:
  std::map<std::vector<int>, Expr> terms_;
  void add_term(std::vector<int> idx, const Expr& coeff);
  friend ExprForm operator+(const ExprForm& a, const ExprForm& b);
  friend ExprForm operator-(const ExprForm& a, const ExprForm& b);
  friend ExprForm wedge(const ExprForm& a, const ExprForm& b);
  friend ExprForm exterior_derivative(const ExprForm& w, const CoordSystem& cs, DMode mode);
};

ExprForm operator+(const ExprForm& a, const ExprForm& b);
ExprForm operator-(const ExprForm& a, const ExprForm& b);
ExprForm wedge(const ExprForm& a, const ExprForm& b);

ExprForm exterior_derivative(const ExprForm& w, const CoordSystem& cs, DMode mode = DMode::Full);

}  // namespace webgeom
