#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "webgeom/rational.hpp"

namespace webgeom {

// A value is exact rational whenever every constant and binding on its
// evaluation path is rational; transcendental functions force double.
using Value = std::variant<Rational, double>;
using Point = std::map<std::string, Value>;

double value_to_double(const Value& v);
bool value_is_exact_zero(const Value& v);
std::string value_to_string(const Value& v);

struct ParseError : std::runtime_error {
  size_t offset;
  ParseError(const std::string& msg, size_t off) : std::runtime_error(msg), offset(off) {}
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExprKind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Func };
enum class FuncKind { Sin, Cos, Exp, Log };

class Expr;
struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

// Immutable expression handle with structural sharing.  Construction folds
// constants and absorbing/neutral elements so that algebraically-zero
// pipelines over rational data collapse to the literal zero constant.
class Expr {
 public:
  Expr();  // the zero constant
  static Expr constant(const Rational& v);
  static Expr integer(long v);
  static Expr variable(const std::string& name);
  static Expr apply(FuncKind f, const Expr& arg);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;
  Expr pow(int n) const;

  Expr diff(const std::string& var) const;
  Expr subs(const std::string& var, const Expr& replacement) const;
  Expr simplified() const;
  Value eval(const Point& p) const;
  double eval_double(const Point& p) const;

  std::string str() const;
  const ExprNode& node() const { return *node_; }
  bool is_const() const;
  bool is_const(const Rational& v) const;
  // Structural equality after construction-time folding.
  bool same_structure(const Expr& other) const;
  std::set<std::string> free_vars() const;

 private:
  explicit Expr(NodePtr n) : node_(std::move(n)) {}
  static Expr make(ExprNode&& n);
  NodePtr node_;
};

struct ExprNode {
  ExprKind kind;
  Rational value;          // Const
  std::string name;        // Var
  FuncKind func{};         // Func
  int exponent = 0;        // Pow
  std::vector<Expr> args;  // children
};

// Parses the expression language
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' int)?
//   base   := int | name | name '(' expr ')' | '(' expr ')'
// with names [a-zA-Z][a-zA-Z0-9_]*, integer literals [0-9]+ ('^' accepts a
// sign), and functions sin/cos/exp/log.  Rational literals "p/q" arrive as a
// division of constants and fold exactly.  Syntax errors carry the byte
// offset; identifiers outside `coords` (when given) are rejected with the
// declared coordinate list in the message.
Expr parse(const std::string& src, const std::vector<std::string>& coords = {});

Expr differentiate(const Expr& e, const std::string& var);
Value evaluate(const Expr& e, const Point& p);

// Central difference (f(x+h) - f(x-h)) / 2h in double precision.
double fd_derivative(const Expr& e, const std::string& var, const Point& p, double h = 1e-4);

std::string func_name(FuncKind f);

}  // namespace webgeom
