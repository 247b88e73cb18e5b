#include "webgeom/sampling.hpp"

#include <cmath>

namespace webgeom {

Rational Sampler::coord() {
  std::uniform_int_distribution<int> num(-32, 32);
  return rational(num(rng_), 32);
}

Point Sampler::point(const std::vector<std::string>& vars) {
  Point p;
  for (const auto& v : vars) p[v] = coord();
  return p;
}

Point Sampler::admissible_point(const std::vector<std::string>& vars,
                                const std::vector<Expr>& guards, int max_tries) {
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    Point p = point(vars);
    bool ok = true;
    for (const Expr& g : guards) {
      try {
        Value v = g.eval(p);
        if (std::holds_alternative<Rational>(v)) {
          if (std::get<Rational>(v) == 0) ok = false;
        } else {
          if (std::fabs(std::get<double>(v)) < 1e-12) ok = false;
        }
      } catch (const EvalError&) {
        ok = false;
      }
      if (!ok) break;
    }
    if (ok) return p;
  }
  throw EvalError("could not find an admissible sample point off the singular locus");
}

std::vector<Point> Sampler::admissible_points(int count, const std::vector<std::string>& vars,
                                              const std::vector<Expr>& guards) {
  std::vector<Point> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(admissible_point(vars, guards));
  return out;
}

}  // namespace webgeom
