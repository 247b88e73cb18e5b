#include "webgeom/polynomial.hpp"

#include <cmath>
#include <random>

namespace webgeom {

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [var, e] : m) d += e;
  return d;
}

Poly Poly::constant(const Rational& v) {
  Poly p;
  if (v != 0) p.terms_[Monomial{}] = v;
  return p;
}

Poly Poly::variable(const std::string& name) {
  Poly p;
  p.terms_[Monomial{{name, 1}}] = Rational(1);
  return p;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
  return d;
}

int Poly::lowest_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int md = monomial_degree(m);
    if (d < 0 || md < d) d = md;
  }
  return d;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b.terms_) {
    auto it = out.terms_.find(m);
    if (it == out.terms_.end()) {
      out.terms_[m] = c;
    } else {
      it->second += c;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const {
  Poly out;
  for (const auto& [m, c] : terms_) out.terms_[m] = -c;
  return out;
}

Poly Poly::scaled(const Rational& k) const {
  Poly out;
  if (k == 0) return out;
  for (const auto& [m, c] : terms_) out.terms_[m] = c * k;
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (const auto& [var, e] : mb) m[var] += e;
      auto it = out.terms_.find(m);
      if (it == out.terms_.end()) {
        Rational c = ca * cb;
        if (c != 0) out.terms_[std::move(m)] = c;
      } else {
        it->second += ca * cb;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  }
  return out;
}

Poly Poly::diff(const std::string& var) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(var);
    if (it == m.end()) continue;
    Monomial dm = m;
    int e = it->second;
    if (e == 1) {
      dm.erase(var);
    } else {
      dm[var] = e - 1;
    }
    out.terms_[std::move(dm)] = c * e;
  }
  return out;
}

Poly Poly::homogeneous_part(int d) const {
  Poly out;
  for (const auto& [m, c] : terms_)
    if (monomial_degree(m) == d) out.terms_[m] = c;
  return out;
}

Poly Poly::truncated(int max_degree) const {
  Poly out;
  for (const auto& [m, c] : terms_)
    if (monomial_degree(m) <= max_degree) out.terms_[m] = c;
  return out;
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::set_coefficient(const Monomial& m, const Rational& c) {
  if (c == 0) {
    terms_.erase(m);
  } else {
    terms_[m] = c;
  }
}

Rational Poly::eval(const std::map<std::string, Rational>& p) const {
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (const auto& [var, e] : m) {
      auto it = p.find(var);
      if (it == p.end()) throw EvalError("unbound variable '" + var + "'");
      term *= pow(it->second, e);
    }
    total += term;
  }
  return total;
}

Expr Poly::to_expr() const {
  Expr sum = Expr::integer(0);
  for (const auto& [m, c] : terms_) {
    Expr term = Expr::constant(c);
    for (const auto& [var, e] : m) term = term * Expr::variable(var).pow(e);
    sum = sum + term;
  }
  return sum;
}

std::optional<Poly> poly_from_expr(const Expr& e) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprKind::Const: return Poly::constant(n.value);
    case ExprKind::Var: return Poly::variable(n.name);
    case ExprKind::Neg: {
      auto a = poly_from_expr(n.args[0]);
      if (!a) return std::nullopt;
      return -*a;
    }
    case ExprKind::Add: {
      auto a = poly_from_expr(n.args[0]);
      auto b = poly_from_expr(n.args[1]);
      if (!a || !b) return std::nullopt;
      return *a + *b;
    }
    case ExprKind::Sub: {
      auto a = poly_from_expr(n.args[0]);
      auto b = poly_from_expr(n.args[1]);
      if (!a || !b) return std::nullopt;
      return *a - *b;
    }
    case ExprKind::Mul: {
      auto a = poly_from_expr(n.args[0]);
      auto b = poly_from_expr(n.args[1]);
      if (!a || !b) return std::nullopt;
      return *a * *b;
    }
    case ExprKind::Div: {
      auto a = poly_from_expr(n.args[0]);
      auto b = poly_from_expr(n.args[1]);
      if (!a || !b) return std::nullopt;
      // Only division by a nonzero constant stays polynomial.
      if (b->total_degree() > 0) return std::nullopt;
      if (b->is_zero()) return std::nullopt;
      return a->scaled(Rational(1) / b->coefficient(Monomial{}));
    }
    case ExprKind::Pow: {
      if (n.exponent < 0) return std::nullopt;
      auto a = poly_from_expr(n.args[0]);
      if (!a) return std::nullopt;
      Poly out = Poly::constant(Rational(1));
      for (int i = 0; i < n.exponent; ++i) out = out * *a;
      return out;
    }
    case ExprKind::Func: return std::nullopt;
  }
  return std::nullopt;
}

bool is_zero_exact(const Expr& e, const std::vector<std::string>& vars, uint64_t seed,
                   double tol) {
  if (auto p = poly_from_expr(e)) return p->is_zero();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-32, 32);
  const int wanted = 24;
  int done = 0, attempts = 0;
  while (done < wanted) {
    if (++attempts > wanted * 40)
      throw EvalError("could not find enough regular sample points for '" + e.str() + "'");
    Point p;
    for (const auto& v : vars) p[v] = rational(num(rng), 32);
    try {
      Value val = e.eval(p);
      if (std::holds_alternative<Rational>(val)) {
        if (std::get<Rational>(val) != 0) return false;
      } else {
        if (std::fabs(std::get<double>(val)) > tol) return false;
      }
      ++done;
    } catch (const EvalError&) {
      // singular point: redraw
    }
  }
  return true;
}

}  // namespace webgeom
