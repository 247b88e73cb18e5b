#pragma once

#include <string>
#include <vector>

#include "webgeom/expr.hpp"

namespace webgeom {

// Vector fields as coefficient vectors over the coordinate frame of `coords`.
inline Expr vf_apply(const std::vector<Expr>& v, const Expr& f,
                     const std::vector<std::string>& coords) {
  Expr out = Expr::integer(0);
  for (size_t i = 0; i < coords.size(); ++i) out = out + v[i] * f.diff(coords[i]);
  return out;
}

inline std::vector<Expr> vf_bracket(const std::vector<Expr>& a, const std::vector<Expr>& b,
                                    const std::vector<std::string>& coords) {
  std::vector<Expr> out(coords.size(), Expr::integer(0));
  for (size_t c = 0; c < coords.size(); ++c) {
    Expr s = Expr::integer(0);
    for (size_t d = 0; d < coords.size(); ++d)
      s = s + a[d] * b[c].diff(coords[d]) - b[d] * a[c].diff(coords[d]);
    out[c] = s;
  }
  return out;
}

}  // namespace webgeom
