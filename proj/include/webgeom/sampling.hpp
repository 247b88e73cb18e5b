#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "webgeom/expr.hpp"

namespace webgeom {

// Deterministic source of rational sample points k/32, k in [-32, 32].
// Coordinates are drawn as integers so a fixed seed yields identical points
// on every platform.
class Sampler {
 public:
  explicit Sampler(uint64_t seed) : rng_(seed) {}

  Rational coord();
  Point point(const std::vector<std::string>& vars);

  // A point where every guard expression evaluates without error to a
  // nonzero value (used to stay off singular loci of denominators and
  // determinants).  Throws after max_tries redraws.
  Point admissible_point(const std::vector<std::string>& vars, const std::vector<Expr>& guards,
                         int max_tries = 400);

  std::vector<Point> admissible_points(int count, const std::vector<std::string>& vars,
                                       const std::vector<Expr>& guards);

 private:
  std::mt19937_64 rng_;
};

}  // namespace webgeom
