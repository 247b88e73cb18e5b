#include "webgeom/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace webgeom {

double value_to_double(const Value& v) {
  if (std::holds_alternative<Rational>(v)) return to_double(std::get<Rational>(v));
  return std::get<double>(v);
}

bool value_is_exact_zero(const Value& v) {
  if (std::holds_alternative<Rational>(v)) return std::get<Rational>(v) == 0;
  return std::get<double>(v) == 0.0;
}

std::string value_to_string(const Value& v) {
  if (std::holds_alternative<Rational>(v)) return to_string(std::get<Rational>(v));
  std::ostringstream os;
  os.precision(17);
  os << std::get<double>(v);
  return os.str();
}

std::string func_name(FuncKind f) {
  switch (f) {
    case FuncKind::Sin: return "sin";
    case FuncKind::Cos: return "cos";
    case FuncKind::Exp: return "exp";
    case FuncKind::Log: return "log";
  }
  return "?";
}

Expr Expr::make(ExprNode&& n) { return Expr(std::make_shared<const ExprNode>(std::move(n))); }

Expr::Expr() : Expr(constant(Rational(0))) {}

Expr Expr::constant(const Rational& v) {
  ExprNode n;
  n.kind = ExprKind::Const;
  n.value = v;
  return make(std::move(n));
}

Expr Expr::integer(long v) { return constant(Rational(v)); }

Expr Expr::variable(const std::string& name) {
  ExprNode n;
  n.kind = ExprKind::Var;
  n.name = name;
  return make(std::move(n));
}

bool Expr::is_const() const { return node_->kind == ExprKind::Const; }
bool Expr::is_const(const Rational& v) const { return is_const() && node_->value == v; }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return Expr::constant(a.node().value + b.node().value);
  if (a.is_const(Rational(0))) return b;
  if (b.is_const(Rational(0))) return a;
  ExprNode n;
  n.kind = ExprKind::Add;
  n.args = {a, b};
  return Expr::make(std::move(n));
}

Expr operator-(const Expr& a, const Expr& b) {
  if (&a.node() == &b.node()) return Expr::integer(0);
  if (a.is_const() && b.is_const()) return Expr::constant(a.node().value - b.node().value);
  if (b.is_const(Rational(0))) return a;
  if (a.is_const(Rational(0))) return -b;
  ExprNode n;
  n.kind = ExprKind::Sub;
  n.args = {a, b};
  return Expr::make(std::move(n));
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_const() && b.is_const()) return Expr::constant(a.node().value * b.node().value);
  if (a.is_const(Rational(0)) || b.is_const(Rational(0))) return Expr::integer(0);
  if (a.is_const(Rational(1))) return b;
  if (b.is_const(Rational(1))) return a;
  ExprNode n;
  n.kind = ExprKind::Mul;
  n.args = {a, b};
  return Expr::make(std::move(n));
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_const(Rational(0))) throw std::invalid_argument("division by the zero constant");
  if (b.is_const(Rational(1))) return a;
  if (a.is_const() && b.is_const()) return Expr::constant(a.node().value / b.node().value);
  if (a.is_const(Rational(0))) return Expr::integer(0);
  ExprNode n;
  n.kind = ExprKind::Div;
  n.args = {a, b};
  return Expr::make(std::move(n));
}

Expr Expr::operator-() const {
  if (is_const()) return constant(-node_->value);
  if (node_->kind == ExprKind::Neg) return node_->args[0];
  ExprNode n;
  n.kind = ExprKind::Neg;
  n.args = {*this};
  return make(std::move(n));
}

Expr Expr::pow(int n) const {
  if (n == 0) return integer(1);
  if (n == 1) return *this;
  if (is_const()) return constant(webgeom::pow(node_->value, n));
  if (node_->kind == ExprKind::Pow) {
    // (u^k)^n = u^(k*n); exact for integer exponents.
    Expr base = node_->args[0];
    long kn = static_cast<long>(node_->exponent) * n;
    if (kn >= -1000000 && kn <= 1000000) return base.pow(static_cast<int>(kn));
  }
  ExprNode node;
  node.kind = ExprKind::Pow;
  node.exponent = n;
  node.args = {*this};
  return make(std::move(node));
}

Expr Expr::apply(FuncKind f, const Expr& arg) {
  if (arg.is_const()) {
    const Rational& v = arg.node().value;
    if (v == 0 && f == FuncKind::Sin) return integer(0);
    if (v == 0 && f == FuncKind::Cos) return integer(1);
    if (v == 0 && f == FuncKind::Exp) return integer(1);
    if (v == 1 && f == FuncKind::Log) return integer(0);
  }
  ExprNode n;
  n.kind = ExprKind::Func;
  n.func = f;
  n.args = {arg};
  return make(std::move(n));
}

Expr Expr::diff(const std::string& var) const {
  const ExprNode& n = *node_;
  switch (n.kind) {
    case ExprKind::Const: return integer(0);
    case ExprKind::Var: return integer(n.name == var ? 1 : 0);
    case ExprKind::Neg: return -n.args[0].diff(var);
    case ExprKind::Add: return n.args[0].diff(var) + n.args[1].diff(var);
    case ExprKind::Sub: return n.args[0].diff(var) - n.args[1].diff(var);
    case ExprKind::Mul:
      return n.args[0].diff(var) * n.args[1] + n.args[0] * n.args[1].diff(var);
    case ExprKind::Div: {
      const Expr& u = n.args[0];
      const Expr& v = n.args[1];
      // Quotient rule; also covers Pow with negative exponents rebuilt as Div.
      return (u.diff(var) * v - u * v.diff(var)) / v.pow(2);
    }
    case ExprKind::Pow: {
      const Expr& u = n.args[0];
      return integer(n.exponent) * u.pow(n.exponent - 1) * u.diff(var);
    }
    case ExprKind::Func: {
      const Expr& u = n.args[0];
      Expr du = u.diff(var);
      switch (n.func) {
        case FuncKind::Sin: return apply(FuncKind::Cos, u) * du;
        case FuncKind::Cos: return -(apply(FuncKind::Sin, u) * du);
        case FuncKind::Exp: return apply(FuncKind::Exp, u) * du;
        case FuncKind::Log: return du / u;
      }
    }
  }
  throw std::logic_error("diff: unreachable");
}

Expr Expr::subs(const std::string& var, const Expr& replacement) const {
  const ExprNode& n = *node_;
  switch (n.kind) {
    case ExprKind::Const: return *this;
    case ExprKind::Var: return n.name == var ? replacement : *this;
    case ExprKind::Neg: return -n.args[0].subs(var, replacement);
    case ExprKind::Add: return n.args[0].subs(var, replacement) + n.args[1].subs(var, replacement);
    case ExprKind::Sub: return n.args[0].subs(var, replacement) - n.args[1].subs(var, replacement);
    case ExprKind::Mul: return n.args[0].subs(var, replacement) * n.args[1].subs(var, replacement);
    case ExprKind::Div: return n.args[0].subs(var, replacement) / n.args[1].subs(var, replacement);
    case ExprKind::Pow: return n.args[0].subs(var, replacement).pow(n.exponent);
    case ExprKind::Func: return apply(n.func, n.args[0].subs(var, replacement));
  }
  throw std::logic_error("subs: unreachable");
}

Expr Expr::simplified() const {
  const ExprNode& n = *node_;
  switch (n.kind) {
    case ExprKind::Const:
    case ExprKind::Var: return *this;
    case ExprKind::Neg: return -n.args[0].simplified();
    case ExprKind::Add: return n.args[0].simplified() + n.args[1].simplified();
    case ExprKind::Sub: return n.args[0].simplified() - n.args[1].simplified();
    case ExprKind::Mul: return n.args[0].simplified() * n.args[1].simplified();
    case ExprKind::Div: return n.args[0].simplified() / n.args[1].simplified();
    case ExprKind::Pow: return n.args[0].simplified().pow(n.exponent);
    case ExprKind::Func: return apply(n.func, n.args[0].simplified());
  }
  throw std::logic_error("simplified: unreachable");
}

namespace {

bool both_rational(const Value& a, const Value& b) {
  return std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b);
}

Value v_add(const Value& a, const Value& b) {
  if (both_rational(a, b)) return std::get<Rational>(a) + std::get<Rational>(b);
  return value_to_double(a) + value_to_double(b);
}
Value v_sub(const Value& a, const Value& b) {
  if (both_rational(a, b)) return std::get<Rational>(a) - std::get<Rational>(b);
  return value_to_double(a) - value_to_double(b);
}
Value v_mul(const Value& a, const Value& b) {
  if (both_rational(a, b)) return std::get<Rational>(a) * std::get<Rational>(b);
  return value_to_double(a) * value_to_double(b);
}

}  // namespace

Value Expr::eval(const Point& p) const {
  const ExprNode& n = *node_;
  switch (n.kind) {
    case ExprKind::Const: return n.value;
    case ExprKind::Var: {
      auto it = p.find(n.name);
      if (it == p.end()) throw EvalError("unbound variable '" + n.name + "'");
      return it->second;
    }
    case ExprKind::Neg: {
      Value v = n.args[0].eval(p);
      if (std::holds_alternative<Rational>(v)) return -std::get<Rational>(v);
      return -std::get<double>(v);
    }
    case ExprKind::Add: return v_add(n.args[0].eval(p), n.args[1].eval(p));
    case ExprKind::Sub: return v_sub(n.args[0].eval(p), n.args[1].eval(p));
    case ExprKind::Mul: return v_mul(n.args[0].eval(p), n.args[1].eval(p));
    case ExprKind::Div: {
      Value num = n.args[0].eval(p);
      Value den = n.args[1].eval(p);
      if (value_is_exact_zero(den))
        throw EvalError("division by zero while evaluating '" + n.args[1].str() + "'");
      if (both_rational(num, den)) return std::get<Rational>(num) / std::get<Rational>(den);
      return value_to_double(num) / value_to_double(den);
    }
    case ExprKind::Pow: {
      Value base = n.args[0].eval(p);
      if (std::holds_alternative<Rational>(base)) {
        const Rational& r = std::get<Rational>(base);
        if (r == 0 && n.exponent < 0)
          throw EvalError("zero raised to negative power in '" + str() + "'");
        return webgeom::pow(r, n.exponent);
      }
      double b = std::get<double>(base);
      if (b == 0.0 && n.exponent < 0)
        throw EvalError("zero raised to negative power in '" + str() + "'");
      return std::pow(b, n.exponent);
    }
    case ExprKind::Func: {
      double u = value_to_double(n.args[0].eval(p));
      switch (n.func) {
        case FuncKind::Sin: return std::sin(u);
        case FuncKind::Cos: return std::cos(u);
        case FuncKind::Exp: return std::exp(u);
        case FuncKind::Log:
          if (u <= 0.0) throw EvalError("log of non-positive value in '" + str() + "'");
          return std::log(u);
      }
    }
  }
  throw std::logic_error("eval: unreachable");
}

double Expr::eval_double(const Point& p) const { return value_to_double(eval(p)); }

bool Expr::same_structure(const Expr& other) const {
  if (node_ == other.node_) return true;
  const ExprNode& a = *node_;
  const ExprNode& b = *other.node_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::Const: return a.value == b.value;
    case ExprKind::Var: return a.name == b.name;
    case ExprKind::Pow:
      if (a.exponent != b.exponent) return false;
      break;
    case ExprKind::Func:
      if (a.func != b.func) return false;
      break;
    default: break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!a.args[i].same_structure(b.args[i])) return false;
  return true;
}

std::set<std::string> Expr::free_vars() const {
  std::set<std::string> out;
  std::vector<const ExprNode*> stack{node_.get()};
  while (!stack.empty()) {
    const ExprNode* n = stack.back();
    stack.pop_back();
    if (n->kind == ExprKind::Var) out.insert(n->name);
    for (const Expr& a : n->args) stack.push_back(&a.node());
  }
  return out;
}

namespace {

// Precedence levels for printing: additive 10, multiplicative 20, power 30.
void print(std::ostream& os, const ExprNode& n, int parent) {
  auto wrap = [&](int mine, auto&& body) {
    if (mine < parent) {
      os << '(';
      body();
      os << ')';
    } else {
      body();
    }
  };
  switch (n.kind) {
    case ExprKind::Const: {
      int mine = n.value < 0 ? 5 : 40;
      wrap(mine, [&] { os << to_string(n.value); });
      return;
    }
    case ExprKind::Var: os << n.name; return;
    case ExprKind::Neg:
      wrap(5, [&] {
        os << '-';
        print(os, n.args[0].node(), 20);
      });
      return;
    case ExprKind::Add:
      wrap(10, [&] {
        print(os, n.args[0].node(), 10);
        os << " + ";
        print(os, n.args[1].node(), 11);
      });
      return;
    case ExprKind::Sub:
      wrap(10, [&] {
        print(os, n.args[0].node(), 10);
        os << " - ";
        print(os, n.args[1].node(), 11);
      });
      return;
    case ExprKind::Mul:
      wrap(20, [&] {
        print(os, n.args[0].node(), 20);
        os << '*';
        print(os, n.args[1].node(), 21);
      });
      return;
    case ExprKind::Div:
      wrap(20, [&] {
        print(os, n.args[0].node(), 20);
        os << '/';
        print(os, n.args[1].node(), 21);
      });
      return;
    case ExprKind::Pow:
      wrap(30, [&] {
        print(os, n.args[0].node(), 31);
        os << '^' << n.exponent;
      });
      return;
    case ExprKind::Func:
      os << func_name(n.func) << '(';
      print(os, n.args[0].node(), 0);
      os << ')';
      return;
  }
}

class Parser {
 public:
  Parser(const std::string& src, const std::vector<std::string>& coords)
      : src_(src), coords_(coords.begin(), coords.end()), restrict_(!coords.empty()) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("syntax error at offset " + std::to_string(pos_) + ": " + what, pos_);
  }

  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  Expr expr() {
    bool negate = eat('-');
    Expr acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Expr term() {
    Expr acc = factor();
    for (;;) {
      if (eat('*')) {
        acc = acc * factor();
      } else if (eat('/')) {
        acc = acc / factor();
      } else {
        return acc;
      }
    }
  }

  Expr factor() {
    Expr b = base();
    if (eat('^')) return b.pow(integer_literal());
    return b;
  }

  int integer_literal() {
    skip_ws();
    size_t start = pos_;
    bool neg = false;
    if (pos_ < src_.size() && src_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
      fail("expected an integer exponent");
    long v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      v = v * 10 + (src_[pos_] - '0');
      if (v > 1000000) {
        pos_ = start;
        fail("exponent too large");
      }
      ++pos_;
    }
    return static_cast<int>(neg ? -v : v);
  }

  Expr base() {
    skip_ws();
    if (pos_ >= src_.size()) fail("expected a number, name or '('");
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return Expr::constant(rational_from_string(src_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      ++pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      std::string name = src_.substr(start, pos_ - start);
      if (peek() == '(') {
        FuncKind f;
        if (name == "sin") f = FuncKind::Sin;
        else if (name == "cos") f = FuncKind::Cos;
        else if (name == "exp") f = FuncKind::Exp;
        else if (name == "log") f = FuncKind::Log;
        else {
          pos_ = start;
          fail("unknown function '" + name + "' (supported: sin, cos, exp, log)");
        }
        eat('(');
        Expr arg = expr();
        if (!eat(')')) fail("expected ')'");
        return Expr::apply(f, arg);
      }
      if (restrict_ && !coords_.count(name)) {
        pos_ = start;
        std::string decl;
        for (const auto& v : coords_) decl += (decl.empty() ? "" : ", ") + v;
        throw ParseError("unknown identifier '" + name + "' at offset " + std::to_string(start) +
                             "; declared coordinates: " + decl,
                         start);
      }
      return Expr::variable(name);
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    fail("expected a number, name or '('");
  }

  const std::string& src_;
  std::set<std::string> coords_;
  bool restrict_;
  size_t pos_ = 0;
};

}  // namespace

std::string Expr::str() const {
  std::ostringstream os;
  print(os, *node_, 0);
  return os.str();
}

Expr parse(const std::string& src, const std::vector<std::string>& coords) {
  return Parser(src, coords).run();
}

Expr differentiate(const Expr& e, const std::string& var) { return e.diff(var); }

Value evaluate(const Expr& e, const Point& p) { return e.eval(p); }

double fd_derivative(const Expr& e, const std::string& var, const Point& p, double h) {
  Point hi = p, lo = p;
  double x = value_to_double(p.at(var));
  hi[var] = x + h;
  lo[var] = x - h;
  return (e.eval_double(hi) - e.eval_double(lo)) / (2.0 * h);
}

}  // namespace webgeom
