#include "webgeom/exterior.hpp"

#include <algorithm>
#include <stdexcept>

namespace webgeom {

CoordSystem CoordSystem::split(size_t m, const std::string& xbase, const std::string& ybase) {
  CoordSystem cs;
  for (size_t i = 1; i <= m; ++i) {
    cs.x.push_back(xbase + std::to_string(i));
    cs.y.push_back(ybase + std::to_string(i));
  }
  return cs;
}

std::vector<std::string> CoordSystem::all() const {
  std::vector<std::string> out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

const std::string& CoordSystem::coord(size_t i) const {
  if (i < x.size()) return x[i];
  if (i < x.size() + y.size()) return y[i - x.size()];
  throw std::out_of_range("coordinate index out of range");
}

int CoordSystem::index_of(const std::string& name) const {
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] == name) return static_cast<int>(i);
  for (size_t i = 0; i < y.size(); ++i)
    if (y[i] == name) return static_cast<int>(x.size() + i);
  return -1;
}

ExprMatrix::ExprMatrix(size_t rows, size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, Expr::integer(0)) {}

ExprMatrix ExprMatrix::identity(size_t n) {
  ExprMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Expr::integer(1);
  return m;
}

ExprMatrix ExprMatrix::transpose() const {
  ExprMatrix out(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

ExprMatrix ExprMatrix::map(const std::function<Expr(const Expr&)>& f) const {
  ExprMatrix out(rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out.at(i, j) = f(at(i, j));
  return out;
}

ExprMatrix ExprMatrix::diff(const std::string& var) const {
  return map([&](const Expr& e) { return e.diff(var); });
}

ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch in addition");
  ExprMatrix out(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j) + b.at(i, j);
  return out;
}

ExprMatrix operator-(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch in subtraction");
  ExprMatrix out(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j) - b.at(i, j);
  return out;
}

ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in product");
  ExprMatrix out(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) {
      Expr s = Expr::integer(0);
      for (size_t k = 0; k < a.cols(); ++k) s = s + a.at(i, k) * b.at(k, j);
      out.at(i, j) = s;
    }
  return out;
}

ExprMatrix scale(const Expr& c, const ExprMatrix& m) {
  return m.map([&](const Expr& e) { return c * e; });
}

namespace {

// Determinant of the submatrix selected by row/column bit masks of equal
// popcount, memoised: at most sum_k C(n,k)^2 entries for n <= 6.
class MinorTable {
 public:
  explicit MinorTable(const ExprMatrix& m) : m_(m) {}

  Expr det(uint32_t rowmask, uint32_t colmask) {
    if (rowmask == 0) return Expr::integer(1);
    auto key = std::make_pair(rowmask, colmask);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    int r0 = 0;
    while (!(rowmask & (1u << r0))) ++r0;
    Expr acc = Expr::integer(0);
    int pos = 0;
    for (int c = 0; c < static_cast<int>(m_.cols()); ++c) {
      if (!(colmask & (1u << c))) continue;
      Expr sub = det(rowmask & ~(1u << r0), colmask & ~(1u << c));
      Expr contrib = m_.at(r0, c) * sub;
      acc = (pos % 2 == 0) ? acc + contrib : acc - contrib;
      ++pos;
    }
    memo_.emplace(key, acc);
    return acc;
  }

 private:
  const ExprMatrix& m_;
  std::map<std::pair<uint32_t, uint32_t>, Expr> memo_;
};

}  // namespace

std::pair<Expr, ExprMatrix> det_and_adjugate(const ExprMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  size_t n = m.rows();
  if (n == 0) return {Expr::integer(1), ExprMatrix(0, 0)};
  if (n > 12) throw std::invalid_argument("matrix too large for Laplace expansion");
  MinorTable table(m);
  uint32_t full = (1u << n) - 1;
  Expr det = table.det(full, full);
  ExprMatrix adj(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Expr minor = table.det(full & ~(1u << i), full & ~(1u << j));
      adj.at(j, i) = ((i + j) % 2 == 0) ? minor : -minor;
    }
  return {det, adj};
}

Expr determinant(const ExprMatrix& m) { return det_and_adjugate(m).first; }

ExprMatrix inverse(const ExprMatrix& m) {
  auto [det, adj] = det_and_adjugate(m);
  if (det.is_const(Rational(0))) throw std::invalid_argument("matrix is singular");
  return adj.map([&](const Expr& e) { return e / det; });
}

namespace {

// Sorts indices ascending, returns the permutation sign; 0 for repeats.
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i) {
    size_t j = i;
    while (j > 0 && idx[j - 1] > idx[j]) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
      --j;
    }
  }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

}  // namespace

void ExprForm::add_term(std::vector<int> idx, const Expr& coeff) {
  if (coeff.is_const(Rational(0))) return;
  int sign = sort_sign(idx);
  if (sign == 0) return;
  Expr signed_coeff = sign > 0 ? coeff : -coeff;
  auto it = terms_.find(idx);
  if (it == terms_.end()) {
    terms_.emplace(std::move(idx), signed_coeff);
  } else {
    Expr sum = it->second + signed_coeff;
    if (sum.is_const(Rational(0))) {
      terms_.erase(it);
    } else {
      it->second = sum;
    }
  }
}

ExprForm ExprForm::function(const Expr& f) {
  ExprForm w;
  w.add_term({}, f);
  return w;
}

ExprForm ExprForm::differential(size_t coord_index) {
  ExprForm w;
  w.add_term({static_cast<int>(coord_index)}, Expr::integer(1));
  return w;
}

ExprForm ExprForm::term(const Expr& coeff, std::vector<int> indices) {
  ExprForm w;
  w.add_term(std::move(indices), coeff);
  return w;
}

ExprForm ExprForm::operator-() const {
  ExprForm out;
  for (const auto& [idx, c] : terms_) out.terms_[idx] = -c;
  return out;
}

ExprForm ExprForm::scaled(const Expr& f) const {
  ExprForm out;
  for (const auto& [idx, c] : terms_) out.add_term(idx, f * c);
  return out;
}

int ExprForm::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.begin()->first.size());
}

Expr ExprForm::coefficient(const std::vector<int>& indices) const {
  std::vector<int> idx = indices;
  int sign = sort_sign(idx);
  if (sign == 0) return Expr::integer(0);
  auto it = terms_.find(idx);
  if (it == terms_.end()) return Expr::integer(0);
  return sign > 0 ? it->second : -it->second;
}

ExprForm operator+(const ExprForm& a, const ExprForm& b) {
  ExprForm out = a;
  for (const auto& [idx, c] : b.terms_) out.add_term(idx, c);
  return out;
}

ExprForm operator-(const ExprForm& a, const ExprForm& b) {
  ExprForm out = a;
  for (const auto& [idx, c] : b.terms_) out.add_term(idx, -c);
  return out;
}

ExprForm wedge(const ExprForm& a, const ExprForm& b) {
  ExprForm out;
  for (const auto& [ia, ca] : a.terms_)
    for (const auto& [ib, cb] : b.terms_) {
      std::vector<int> idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add_term(std::move(idx), ca * cb);
    }
  return out;
}

ExprForm exterior_derivative(const ExprForm& w, const CoordSystem& cs, DMode mode) {
  size_t lo = 0, hi = cs.dim();
  if (mode == DMode::X) hi = cs.x.size();
  if (mode == DMode::Y) lo = cs.x.size();
  ExprForm out;
  for (const auto& [idx, c] : w.terms()) {
    for (size_t i = lo; i < hi; ++i) {
      Expr dc = c.diff(cs.coord(i));
      if (dc.is_const(Rational(0))) continue;
      std::vector<int> extended;
      extended.reserve(idx.size() + 1);
      extended.push_back(static_cast<int>(i));
      extended.insert(extended.end(), idx.begin(), idx.end());
      out.add_term(std::move(extended), dc);
    }
  }
  return out;
}

}  // namespace webgeom
