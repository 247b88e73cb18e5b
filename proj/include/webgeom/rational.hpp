#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace webgeom {

// Exact arbitrary-precision rational scalar used on every polynomial path.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p", "-p" and "p/q" with optional sign on either part.
inline Rational rational_from_string(const std::string& s) {
  try {
    Rational r(s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational literal: '" + s + "'");
  }
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

// Exact integer power; n may be negative (base must be nonzero then).
inline Rational pow(const Rational& base, int n) {
  if (n == 0) return Rational(1);
  if (base == 0 && n < 0) throw std::domain_error("pow: zero base with negative exponent");
  mpz_class num = base.get_num(), den = base.get_den();
  unsigned long k = static_cast<unsigned long>(n < 0 ? -static_cast<long>(n) : n);
  mpz_class pn, pd;
  mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), k);
  mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), k);
  Rational r = (n > 0) ? Rational(pn, pd) : Rational(pd, pn);
  r.canonicalize();
  return r;
}

}  // namespace webgeom
