#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tropfact {

// mpq_class keeps every value in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

using QVector = std::vector<Rational>;

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);

/// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// p/q in lowest terms (the mpq_class two-argument constructor does not reduce).
inline Rational frac(const Integer& p, const Integer& q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline bool is_zero(const QVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

Rational dot(const QVector& a, const QVector& b);

/// Scales v to a primitive integer vector (gcd 1), keeping its direction.
std::vector<Integer> primitive_integer(const QVector& v);

}  // namespace tropfact
