#include "webgeom/heavenly.hpp"

#include <stdexcept>

#include "webgeom/polynomial.hpp"
#include "webgeom/vector_field.hpp"

namespace webgeom {

namespace {

void check_spec(const HeavenlySpec& spec) {
  if (spec.R.size() != spec.m)
    throw std::invalid_argument("potential spec: needs exactly m expressions");
}

}  // namespace

std::vector<std::vector<std::vector<Expr>>> eq1_residual(const HeavenlySpec& spec) {
  check_spec(spec);
  CoordSystem cs = spec.coords();
  size_t m = spec.m;
  std::vector<std::vector<std::vector<Expr>>> res(
      m, std::vector<std::vector<Expr>>(m, std::vector<Expr>(m, Expr::integer(0))));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j)
      for (size_t k = 0; k < m; ++k) {
        Expr r = spec.R[k].diff(cs.x[i]).diff(cs.y[j]) * Expr::integer(-1) +
                 spec.R[k].diff(cs.x[j]).diff(cs.y[i]);
        for (size_t l = 0; l < m; ++l)
          r = r + spec.R[l].diff(cs.x[i]) * spec.R[k].diff(cs.x[l]).diff(cs.x[j]) -
              spec.R[l].diff(cs.x[j]) * spec.R[k].diff(cs.x[l]).diff(cs.x[i]);
        res[i][j][k] = r;
      }
  return res;
}

std::vector<std::string> boundary_check(const HeavenlySpec& spec) {
  check_spec(spec);
  CoordSystem cs = spec.coords();
  std::vector<std::string> violations;
  auto at_zero = [&](Expr e) {
    for (const auto& xi : cs.x) e = e.subs(xi, Expr::integer(0));
    return e;
  };
  auto record = [&](const Expr& e, const std::string& what) {
    if (!is_zero_exact(at_zero(e), cs.y, spec.seed)) violations.push_back(what);
  };
  for (size_t k = 0; k < spec.m; ++k) {
    std::string Rk = "R^" + std::to_string(k + 1);
    record(spec.R[k], Rk + "(0, y) != 0");
    for (size_t i = 0; i < spec.m; ++i) {
      record(spec.R[k].diff(cs.x[i]), "d" + cs.x[i] + " " + Rk + "(0, y) != 0");
      for (size_t j = i; j < spec.m; ++j)
        record(spec.R[k].diff(cs.x[i]).diff(cs.x[j]),
               "d" + cs.x[i] + " d" + cs.x[j] + " " + Rk + "(0, y) != 0");
    }
  }
  return violations;
}

std::vector<std::vector<Expr>> lax_fields(const HeavenlySpec& spec, const Expr& t) {
  check_spec(spec);
  CoordSystem cs = spec.coords();
  size_t m = spec.m;
  std::vector<std::vector<Expr>> fields;
  for (size_t i = 0; i < m; ++i) {
    std::vector<Expr> L(2 * m, Expr::integer(0));
    L[i] = Expr::integer(1);
    L[m + i] = t;
    for (size_t j = 0; j < m; ++j) L[j] = L[j] + t * spec.R[j].diff(cs.x[i]);
    fields.push_back(L);
  }
  return fields;
}

std::vector<std::pair<size_t, size_t>> index_pairs(size_t m) {
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) out.emplace_back(i, j);
  return out;
}

std::vector<std::vector<Expr>> lax_commutators(const HeavenlySpec& spec, const Expr& t) {
  std::vector<std::vector<Expr>> L = lax_fields(spec, t);
  std::vector<std::string> coords = spec.coords().all();
  std::vector<std::vector<Expr>> out;
  for (auto [i, j] : index_pairs(spec.m)) out.push_back(vf_bracket(L[i], L[j], coords));
  return out;
}

PotentialCurvature curvature_from_R(const HeavenlySpec& spec) {
  check_spec(spec);
  CoordSystem cs = spec.coords();
  size_t m = spec.m;
  PotentialCurvature out;
  out.riemann.assign(m, std::vector<std::vector<std::vector<Expr>>>(
                            m, std::vector<std::vector<Expr>>(m, std::vector<Expr>(m))));
  for (size_t k = 0; k < m; ++k)
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j)
        for (size_t l = 0; l < m; ++l)
          out.riemann[k][i][j][l] = spec.R[k].diff(cs.x[i]).diff(cs.x[j]).diff(cs.x[l]);
  out.ricci_trace = ExprMatrix(m, m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      Expr s = Expr::integer(0);
      for (size_t k = 0; k < m; ++k) s = s + out.riemann[k][i][j][k];
      out.ricci_trace.at(i, j) = s;
    }
  return out;
}

Expr ThetaSpec::theta_at(size_t i, size_t j) const {
  if (i == j) return Expr::integer(0);
  auto it = theta.find(i < j ? std::make_pair(i, j) : std::make_pair(j, i));
  Expr v = it == theta.end() ? Expr::integer(0) : it->second;
  return i < j ? v : -v;
}

namespace {

void check_theta(const ThetaSpec& spec) {
  if (spec.m < 2) throw std::invalid_argument("skew potential spec: needs m >= 2");
  if (spec.m == 2 && !spec.f.empty())
    throw std::invalid_argument("gauge forms are not defined for m = 2");
  for (const auto& [ij, e] : spec.theta) {
    (void)e;
    if (ij.first >= ij.second || ij.second >= spec.m)
      throw std::invalid_argument("skew potential spec: index pair out of range");
  }
  for (const auto& [ij, form] : spec.f) {
    if (ij.first >= ij.second || ij.second >= spec.m)
      throw std::invalid_argument("gauge form: index pair out of range");
    for (const auto& [idx, c] : form.terms()) {
      (void)c;
      if (idx.size() + 3 != spec.m)
        throw std::invalid_argument("gauge form: degree must be m - 3");
      for (int s : idx)
        if (s < 0 || s >= static_cast<int>(spec.m))
          throw std::invalid_argument("gauge form: only dx differentials are allowed");
    }
  }
}

// Wedge of every dx_s except s in {a, b}, indices increasing.
std::vector<int> complement_pair(size_t m, size_t a, size_t b) {
  std::vector<int> idx;
  for (size_t s = 0; s < m; ++s)
    if (s != a && s != b) idx.push_back(static_cast<int>(s));
  return idx;
}

}  // namespace

std::vector<Expr> theta_to_R(const ThetaSpec& spec) {
  check_theta(spec);
  CoordSystem cs = spec.coords();
  std::vector<Expr> R;
  for (size_t i = 0; i < spec.m; ++i) {
    Expr r = Expr::integer(0);
    for (size_t j = 0; j < spec.m; ++j) {
      if (j == i) continue;
      Expr term = spec.theta_at(j, i).diff(cs.x[j]);
      r = (i + j) % 2 == 0 ? r + term : r - term;  // (-1)^{i+j} in 1-based indices
    }
    R.push_back(r);
  }
  return R;
}

std::map<std::pair<size_t, size_t>, ExprForm> heavenly_residual_forms(const ThetaSpec& spec) {
  check_theta(spec);
  CoordSystem cs = spec.coords();
  std::vector<Expr> R = theta_to_R(spec);
  std::map<std::pair<size_t, size_t>, ExprForm> out;
  for (auto [i, j] : index_pairs(spec.m)) {
    ExprForm form;
    for (auto [a, b] : index_pairs(spec.m)) {
      Expr gamma = R[a].diff(cs.x[i]) * R[b].diff(cs.x[j]) -
                   R[a].diff(cs.x[j]) * R[b].diff(cs.x[i]);
      Expr beta = spec.theta_at(a, b).diff(cs.x[j]).diff(cs.y[i]) -
                  spec.theta_at(a, b).diff(cs.x[i]).diff(cs.y[j]);
      form = form + ExprForm::term(gamma - beta, complement_pair(spec.m, a, b));
    }
    auto fit = spec.f.find({i, j});
    if (fit != spec.f.end()) form = form - exterior_derivative(fit->second, cs, DMode::X);
    out[{i, j}] = form;
  }
  return out;
}

std::map<std::pair<size_t, size_t>, std::map<std::pair<size_t, size_t>, Expr>>
heavenly_residual(const ThetaSpec& spec) {
  auto forms = heavenly_residual_forms(spec);
  std::map<std::pair<size_t, size_t>, std::map<std::pair<size_t, size_t>, Expr>> out;
  for (auto [ij, form] : forms)
    for (auto [k, l] : index_pairs(spec.m))
      out[ij][{k, l}] = form.coefficient(complement_pair(spec.m, k, l));
  return out;
}

std::vector<std::string> theta_boundary_check(const ThetaSpec& spec) {
  check_theta(spec);
  CoordSystem cs = spec.coords();
  std::vector<std::string> violations;
  for (const auto& [ij, form] : spec.f)
    for (const auto& [idx, c] : form.terms()) {
      Expr e = c;
      for (const auto& xi : cs.x) e = e.subs(xi, Expr::integer(0));
      if (!is_zero_exact(e, cs.y, spec.seed))
        violations.push_back("f_" + std::to_string(ij.first + 1) +
                             std::to_string(ij.second + 1) + "(0, y) != 0");
    }
  return violations;
}

SystemShape system_shape(size_t m) {
  auto choose = [](size_t n, size_t k) -> size_t {
    if (k > n) return 0;
    size_t r = 1;
    for (size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  };
  SystemShape s;
  s.unknowns = choose(m, 2);
  s.equations = s.unknowns * s.unknowns;
  s.constraints = choose(m, 3) * choose(m, 2);
  return s;
}

ParaComplexTriple para_complex_triple(const HeavenlySpec& spec) {
  check_spec(spec);
  CoordSystem cs = spec.coords();
  size_t m = spec.m;
  ExprMatrix A(m, m);
  for (size_t j = 0; j < m; ++j)
    for (size_t i = 0; i < m; ++i) A.at(j, i) = spec.R[j].diff(cs.x[i]);
  ExprMatrix Id = ExprMatrix::identity(m);
  ExprMatrix A2 = A * A;

  auto block = [&](const ExprMatrix& tl, const ExprMatrix& tr, const ExprMatrix& bl,
                   const ExprMatrix& br) {
    ExprMatrix out(2 * m, 2 * m);
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) {
        out.at(i, j) = tl.at(i, j);
        out.at(i, m + j) = tr.at(i, j);
        out.at(m + i, j) = bl.at(i, j);
        out.at(m + i, m + j) = br.at(i, j);
      }
    return out;
  };
  ExprMatrix zero(m, m);
  Expr neg2 = Expr::integer(-2);
  ParaComplexTriple out;
  out.m = m;
  Expr neg1 = Expr::integer(-1);
  out.I = block(Id, scale(neg2, A), zero, scale(neg1, Id));
  out.K = block(scale(neg1, A), A2 - Id, scale(neg1, Id), A);
  out.J = out.I * out.K;
  return out;
}

}  // namespace webgeom
