#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "webgeom/expr.hpp"

namespace webgeom {

// Sparse multivariate polynomial over the rationals.  Monomials map variable
// names to positive exponents; the zero polynomial has no terms.
using Monomial = std::map<std::string, int>;

int monomial_degree(const Monomial& m);

class Poly {
 public:
  Poly() = default;
  static Poly constant(const Rational& v);
  static Poly variable(const std::string& name);

  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;   // -1 for zero
  int lowest_degree() const;  // -1 for zero

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scaled(const Rational& c) const;

  Poly diff(const std::string& var) const;
  Poly homogeneous_part(int d) const;
  Poly truncated(int max_degree) const;

  Rational coefficient(const Monomial& m) const;
  void set_coefficient(const Monomial& m, const Rational& c);
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  Rational eval(const std::map<std::string, Rational>& p) const;
  Expr to_expr() const;
  bool operator==(const Poly& other) const { return terms_ == other.terms_; }

 private:
  std::map<Monomial, Rational> terms_;
};

// Succeeds whenever the expression is built from constants, variables, +, -,
// *, non-negative integer powers, and division by constant subexpressions.
std::optional<Poly> poly_from_expr(const Expr& e);

// Exact zero decision: polynomial expressions are decided symbolically, all
// others by seeded rational sampling (exact comparison on rational values,
// |v| <= tol once doubles enter through transcendental functions).  Points
// where the expression is singular are skipped and redrawn.
bool is_zero_exact(const Expr& e, const std::vector<std::string>& vars, uint64_t seed = 12345,
                   double tol = 1e-11);

}  // namespace webgeom
